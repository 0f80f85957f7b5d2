#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace marketgraph {

/// Base for every engine fault. Errors that are part of normal data flow
/// (schema violations, ingest rejections, unsupported questions) are values,
/// not exceptions; see the module that produces them.
struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// graph-store
struct EmptyLabelSet : EngineError {
    EmptyLabelSet() : EngineError("node requires at least one label") {}
};
struct UnknownNode : EngineError {
    explicit UnknownNode(std::uint64_t id)
        : EngineError("unknown node id " + std::to_string(id)) {}
};
struct UnknownEdge : EngineError {
    explicit UnknownEdge(std::uint64_t id)
        : EngineError("unknown edge id " + std::to_string(id)) {}
};
struct IoFailure : EngineError {
    using EngineError::EngineError;
};
struct CorruptSnapshot : EngineError {
    using EngineError::EngineError;
};

/// 1-based position inside a query text.
struct SourcePos {
    int line = 1;
    int column = 1;
};

// cypher-parser
struct LexError : EngineError {
    SourcePos pos;
    LexError(SourcePos p, const std::string& what)
        : EngineError("lex error at " + std::to_string(p.line) + ":" +
                      std::to_string(p.column) + ": " + what),
          pos(p) {}
};
struct ParseError : EngineError {
    SourcePos pos;
    ParseError(SourcePos p, const std::string& what)
        : EngineError("parse error at " + std::to_string(p.line) + ":" +
                      std::to_string(p.column) + ": " + what),
          pos(p) {}
};
struct BindError : EngineError {
    SourcePos pos;
    std::string variable;
    BindError(SourcePos p, std::string var, const std::string& what)
        : EngineError("bind error at " + std::to_string(p.line) + ":" +
                      std::to_string(p.column) + ": " + what),
          pos(p),
          variable(std::move(var)) {}
};

// query-executor (test oracle guard)
struct GuardExceeded : EngineError {
    using EngineError::EngineError;
};

// ingest-pipeline
struct BadDate : EngineError {
    explicit BadDate(const std::string& text)
        : EngineError("not a valid YYYYMMDD calendar date: " + text) {}
};
/// Thrown by record parsers for one unusable line; ingestion catches it and
/// turns it into a rejection entry, the pipeline keeps going.
struct MalformedRecord : EngineError {
    int line;
    std::string reason;  // what() without the line prefix
    MalformedRecord(int line_no, const std::string& what)
        : EngineError("line " + std::to_string(line_no) + ": " + what),
          line(line_no),
          reason(what) {}
};
struct BadSpec : EngineError {
    using EngineError::EngineError;
};

// question-translator
struct EntityNotFound : EngineError {
    std::string ref;
    explicit EntityNotFound(std::string r)
        : EngineError("no such company or sector: " + r), ref(std::move(r)) {}
};
struct TemplateGap : EngineError {
    using EngineError::EngineError;
};
struct BackendUnreachable : EngineError {
    using EngineError::EngineError;
};
struct BackendTimeout : EngineError {
    using EngineError::EngineError;
};
struct GeneratedQueryInvalid : EngineError {
    using EngineError::EngineError;
};

// answer-composer
struct MissingColumns : EngineError {
    using EngineError::EngineError;
};
struct ShapeMismatch : EngineError {
    using EngineError::EngineError;
};

// frontends
struct ConfigError : EngineError {
    using EngineError::EngineError;
};

}  // namespace marketgraph
