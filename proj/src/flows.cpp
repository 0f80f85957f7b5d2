#include "marketgraph/flows.hpp"

#include <variant>

#include "marketgraph/errors.hpp"
#include "marketgraph/executor.hpp"
#include "marketgraph/parser.hpp"
#include "marketgraph/question.hpp"

namespace marketgraph {

ResultTable run_query_text(const PropertyGraph& g, const std::string& cypher) {
    return execute(g, parse(cypher));
}

AskFlowResult run_ask_flow(const PropertyGraph& g, const SchemaCatalog& catalog,
                           const std::string& question,
                           const std::optional<BackendConfig>& backend,
                           bool fallback_on_backend_failure) {
    AskFlowResult result;
    Lexicon lexicon = build_lexicon(g);
    QuestionIntent intent = classify_and_extract(question, lexicon);
    if (const auto* u = std::get_if<Unsupported>(&intent)) {
        result.unsupported_reason = u->reason;
        TranslationResult translation;
        translation.intent = intent;
        result.report = compose(question, translation, ResultTable{});
        return result;
    }
    TranslationResult translation;
    bool translated = false;
    if (backend) {
        try {
            std::string generated =
                external_generate(question, catalog.schema_text(), *backend);
            translation = validate_generated(intent, generated, catalog);
            translated = true;
        } catch (const EngineError& e) {
            bool backend_fault = dynamic_cast<const BackendUnreachable*>(&e) ||
                                 dynamic_cast<const BackendTimeout*>(&e) ||
                                 dynamic_cast<const GeneratedQueryInvalid*>(&e);
            if (!backend_fault || !fallback_on_backend_failure) throw;
            result.warnings.push_back(std::string("external backend failed (") +
                                      e.what() +
                                      "); using the template translator");
        }
    }
    if (!translated) translation = translate(intent, g, catalog);
    ResultTable table = execute(g, translation.ast);
    result.report = compose(question, translation, table);
    return result;
}

}  // namespace marketgraph
