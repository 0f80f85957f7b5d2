#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace marketgraph {

using TextListT = std::vector<std::string>;

/// Property value: Null | Text | Integer | Float | Boolean | TextList.
/// Integer and Float stay distinct variants; storage never coerces.
class Value {
public:
    enum class Kind { Null, Text, Integer, Float, Boolean, TextList };

    Value() = default;

    static Value null() { return Value(); }
    static Value text(std::string s) { return Value(Repr(std::move(s))); }
    static Value integer(std::int64_t i) { return Value(Repr(i)); }
    static Value floating(double d) { return Value(Repr(d)); }
    static Value boolean(bool b) { return Value(Repr(b)); }
    static Value text_list(TextListT xs) { return Value(Repr(std::move(xs))); }

    Kind kind() const { return static_cast<Kind>(repr_.index()); }
    bool is_null() const { return kind() == Kind::Null; }
    bool is_numeric() const {
        return kind() == Kind::Integer || kind() == Kind::Float;
    }

    const std::string& as_text() const { return std::get<std::string>(repr_); }
    std::int64_t as_integer() const { return std::get<std::int64_t>(repr_); }
    double as_floating() const { return std::get<double>(repr_); }
    bool as_boolean() const { return std::get<bool>(repr_); }
    const TextListT& as_text_list() const { return std::get<TextListT>(repr_); }

    /// Integer widened to double; only valid when is_numeric().
    double numeric() const {
        return kind() == Kind::Integer ? static_cast<double>(as_integer())
                                       : as_floating();
    }

    // Exact storage equality. Null == Null holds here; query-level equality
    // with three-valued null semantics lives in the executor.
    friend bool operator==(const Value& a, const Value& b) {
        return a.repr_ == b.repr_;
    }
    friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

    // Total order over storage (kind rank, then payload); used for index keys
    // and deterministic containers, not for query comparisons.
    friend bool operator<(const Value& a, const Value& b) {
        return a.repr_ < b.repr_;
    }

private:
    using Repr = std::variant<std::monostate, std::string, std::int64_t,
                              double, bool, TextListT>;
    explicit Value(Repr r) : repr_(std::move(r)) {}
    Repr repr_;
};

const char* kind_name(Value::Kind k);

}  // namespace marketgraph
