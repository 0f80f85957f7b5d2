#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <httplib.h>

#include <chrono>
#include <functional>
#include <nlohmann/json.hpp>
#include <string>
#include <thread>

#include "marketgraph/errors.hpp"
#include "marketgraph/question.hpp"
#include "marketgraph/schema.hpp"
#include "marketgraph/translate.hpp"
#include "support/listings.hpp"

using namespace marketgraph;

namespace {

// In-process stub standing in for an external query generator. Each instance
// binds its own ephemeral port so tests never collide.
class StubBackend {
  public:
    explicit StubBackend(httplib::Server::Handler handler) {
        server_.Post("/generate", std::move(handler));
        port_ = server_.bind_to_any_port("127.0.0.1");
        REQUIRE(port_ > 0);
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    ~StubBackend() {
        server_.stop();
        if (thread_.joinable()) thread_.join();
    }

    std::string url() const {
        return "http://127.0.0.1:" + std::to_string(port_) + "/generate";
    }

    int port() const { return port_; }

  private:
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
};

BackendConfig config_for(const StubBackend& stub, int timeout_s = 5) {
    return BackendConfig{stub.url(), timeout_s};
}

}  // namespace

TEST_CASE("external_generate posts the documented envelope and returns the query") {
    std::string captured_body;
    StubBackend stub([&](const httplib::Request& req, httplib::Response& res) {
        captured_body = req.body;
        nlohmann::json reply{{"query", "MATCH (c:Company) RETURN c.stock_code AS code"}};
        res.set_content(reply.dump(), "application/json");
    });

    std::string query = external_generate("Which companies exist?",
                                          "schema text here",
                                          config_for(stub));
    CHECK(query == "MATCH (c:Company) RETURN c.stock_code AS code");

    auto doc = nlohmann::json::parse(captured_body);
    REQUIRE(doc.is_object());
    CHECK(doc.at("question") == "Which companies exist?");
    CHECK(doc.at("schema") == "schema text here");
    CHECK(doc.at("rules") == translation_rules_text());
}

TEST_CASE("responses outside the {query: text} envelope are GeneratedQueryInvalid") {
    auto expect_invalid = [](httplib::Server::Handler handler) {
        StubBackend stub(std::move(handler));
        CHECK_THROWS_WITH_AS(
            external_generate("q", "s", config_for(stub)),
            "backend response is not a {\"query\": text} object",
            GeneratedQueryInvalid);
    };

    expect_invalid([](const httplib::Request&, httplib::Response& res) {
        res.set_content("this is not json", "text/plain");
    });
    expect_invalid([](const httplib::Request&, httplib::Response& res) {
        res.set_content("[1, 2, 3]", "application/json");
    });
    expect_invalid([](const httplib::Request&, httplib::Response& res) {
        res.set_content(R"({"query": 42})", "application/json");
    });
    expect_invalid([](const httplib::Request&, httplib::Response& res) {
        res.set_content(R"({"result": "MATCH (c:Company) RETURN c"})",
                        "application/json");
    });
}

TEST_CASE("non-200 statuses are BackendUnreachable") {
    StubBackend stub([](const httplib::Request&, httplib::Response& res) {
        res.status = 500;
        res.set_content("boom", "text/plain");
    });
    CHECK_THROWS_WITH_AS(external_generate("q", "s", config_for(stub)),
                         doctest::Contains("returned HTTP 500"),
                         BackendUnreachable);
}

TEST_CASE("connection failures and bad schemes are BackendUnreachable") {
    // grab a free port, then shut the server down so nothing listens there
    int dead_port = 0;
    {
        StubBackend stub([](const httplib::Request&, httplib::Response&) {});
        dead_port = stub.port();
    }
    BackendConfig closed{"http://127.0.0.1:" + std::to_string(dead_port) +
                             "/generate",
                         2};
    CHECK_THROWS_WITH_AS(external_generate("q", "s", closed),
                         doctest::Contains("unreachable"), BackendUnreachable);

    BackendConfig ftp{"ftp://example.test/generate", 2};
    CHECK_THROWS_WITH_AS(
        external_generate("q", "s", ftp),
        doctest::Contains("only http:// backend URLs are supported"),
        BackendUnreachable);

    BackendConfig https{"https://example.test/generate", 2};
    CHECK_THROWS_AS(external_generate("q", "s", https), BackendUnreachable);
}

TEST_CASE("a slow backend is BackendTimeout") {
    StubBackend stub([](const httplib::Request&, httplib::Response& res) {
        std::this_thread::sleep_for(std::chrono::seconds(3));
        res.set_content(R"({"query": "MATCH (c:Company) RETURN c"})",
                        "application/json");
    });
    CHECK_THROWS_WITH_AS(external_generate("q", "s", config_for(stub, 1)),
                         doctest::Contains("timed out after 1 s"),
                         BackendTimeout);
}

TEST_CASE("generated text still passes through the validation gate") {
    const SchemaCatalog& cat = SchemaCatalog::market();

    // a well-behaved backend echoing the reference comparison query
    StubBackend good([](const httplib::Request&, httplib::Response& res) {
        nlohmann::json reply{{"query", mgtest::kComparisonQuery}};
        res.set_content(reply.dump(), "application/json");
    });
    std::string text =
        external_generate(mgtest::kComparisonQuestion, "schema", config_for(good));
    TranslationResult tr =
        validate_generated(Unsupported{"n/a"}, text, cat);
    CHECK(tr.query_text == mgtest::kComparisonQuery);

    // a backend that answers fluently but names schema that does not exist;
    // the gate rejects it before anything could execute
    StubBackend rogue([](const httplib::Request&, httplib::Response& res) {
        nlohmann::json reply{
            {"query", "MATCH (e:Employee)-[:WORKS_AT]->(c:Company) RETURN e"}};
        res.set_content(reply.dump(), "application/json");
    });
    std::string rogue_text =
        external_generate("who works where", "schema", config_for(rogue));
    CHECK_THROWS_WITH_AS(validate_generated(Unsupported{"n/a"}, rogue_text, cat),
                         doctest::Contains("unknown label Employee"),
                         GeneratedQueryInvalid);

    // and one that emits text in some other query language entirely
    StubBackend sql([](const httplib::Request&, httplib::Response& res) {
        nlohmann::json reply{{"query", "SELECT * FROM companies;"}};
        res.set_content(reply.dump(), "application/json");
    });
    std::string sql_text =
        external_generate("list companies", "schema", config_for(sql));
    CHECK_THROWS_WITH_AS(validate_generated(Unsupported{"n/a"}, sql_text, cat),
                         doctest::Contains("generated query does not parse"),
                         GeneratedQueryInvalid);
}
