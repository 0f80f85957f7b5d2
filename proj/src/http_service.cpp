#include "marketgraph/http_service.hpp"

#include <exception>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "marketgraph/errors.hpp"
#include "marketgraph/flows.hpp"

namespace marketgraph {

namespace {

using nlohmann::json;

void reply(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(2), "application/json");
}

void reply_raw(httplib::Response& res, const std::string& body) {
    res.status = 200;
    res.set_content(body, "application/json");
}

json position_of(const SourcePos& pos) {
    return json{{"line", pos.line}, {"column", pos.column}};
}

/// The body field named by `key`, or nullopt after writing the 400.
std::optional<std::string> text_field(const httplib::Request& req,
                                      httplib::Response& res,
                                      const std::string& key) {
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object() || !body.contains(key) ||
        !body[key].is_string()) {
        reply(res, 400,
              json{{"error", "request body must be {\"" + key + "\": text}"}});
        return std::nullopt;
    }
    return body[key].get<std::string>();
}

}  // namespace

struct HttpService::Impl {
    const PropertyGraph& g;
    const SchemaCatalog& catalog;
    AppConfig config;
    std::uint64_t baseline;
    httplib::Server server;
    std::thread worker;
    bool bound = false;

    Impl(const PropertyGraph& graph, const SchemaCatalog& cat, AppConfig cfg)
        : g(graph), catalog(cat), config(std::move(cfg)),
          baseline(graph.structural_hash()) {
        register_routes();
    }

    void register_routes() {
        server.Post("/query", [this](const httplib::Request& req,
                                     httplib::Response& res) {
            auto cypher = text_field(req, res, "cypher");
            if (!cypher) return;
            try {
                ResultTable table = run_query_text(g, *cypher);
                reply_raw(res, table.to_json());
            } catch (const LexError& e) {
                reply(res, 400,
                      json{{"error", e.what()}, {"position", position_of(e.pos)}});
            } catch (const ParseError& e) {
                reply(res, 400,
                      json{{"error", e.what()}, {"position", position_of(e.pos)}});
            } catch (const BindError& e) {
                reply(res, 400,
                      json{{"error", e.what()}, {"position", position_of(e.pos)}});
            }
        });

        server.Post("/ask", [this](const httplib::Request& req,
                                   httplib::Response& res) {
            auto question = text_field(req, res, "question");
            if (!question) return;
            try {
                AskFlowResult flow = run_ask_flow(g, catalog, *question,
                                                  config.backend, false);
                if (flow.unsupported_reason) {
                    reply(res, 400,
                          json{{"error", "unsupported question: " +
                                             *flow.unsupported_reason},
                               {"intent", "unsupported"}});
                    return;
                }
                reply_raw(res, report_to_json(flow.report));
            } catch (const EntityNotFound& e) {
                reply(res, 400, json{{"error", e.what()}});
            } catch (const TemplateGap& e) {
                reply(res, 400, json{{"error", e.what()}});
            } catch (const BadDate& e) {
                reply(res, 400, json{{"error", e.what()}});
            } catch (const BackendTimeout& e) {
                reply(res, 504, json{{"error", e.what()}});
            } catch (const BackendUnreachable& e) {
                reply(res, 500, json{{"error", e.what()}});
            } catch (const GeneratedQueryInvalid& e) {
                reply(res, 500, json{{"error", e.what()}});
            }
        });

        server.Get("/schema",
                   [this](const httplib::Request&, httplib::Response& res) {
                       reply_raw(res, catalog.schema_json());
                   });

        server.Get("/health",
                   [this](const httplib::Request&, httplib::Response& res) {
                       reply(res, 200,
                             json{{"status", "ok"},
                                  {"nodes", g.node_count()},
                                  {"edges", g.edge_count()}});
                   });

        server.set_exception_handler([](const httplib::Request&,
                                        httplib::Response& res,
                                        std::exception_ptr ep) {
            std::string what = "internal error";
            try {
                std::rethrow_exception(ep);
            } catch (const std::exception& e) {
                what = e.what();
            } catch (...) {
            }
            reply(res, 500, json{{"error", what}});
        });
    }
};

HttpService::HttpService(const PropertyGraph& g, const SchemaCatalog& catalog,
                         AppConfig config)
    : impl_(std::make_unique<Impl>(g, catalog, std::move(config))) {}

HttpService::~HttpService() { stop(); }

int HttpService::bind(const std::string& host, int port) {
    int bound;
    if (port == 0) {
        bound = impl_->server.bind_to_any_port(host);
        if (bound <= 0) throw IoFailure("cannot bind to " + host);
    } else {
        if (!impl_->server.bind_to_port(host, port))
            throw IoFailure("cannot bind to " + host + ":" +
                            std::to_string(port));
        bound = port;
    }
    impl_->bound = true;
    return bound;
}

void HttpService::run() {
    if (!impl_->bound) throw IoFailure("service is not bound to a port");
    impl_->server.listen_after_bind();
}

void HttpService::start() {
    if (!impl_->bound) throw IoFailure("service is not bound to a port");
    impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
}

void HttpService::stop() {
    impl_->server.stop();
    if (impl_->worker.joinable()) impl_->worker.join();
}

std::uint64_t HttpService::baseline_hash() const { return impl_->baseline; }

bool HttpService::snapshot_intact() const {
    return impl_->g.structural_hash() == impl_->baseline;
}

}  // namespace marketgraph
