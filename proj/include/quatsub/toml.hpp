#ifndef QUATSUB_TOML_HPP
#define QUATSUB_TOML_HPP

// Minimal TOML subset: bare-key tables, strings, integers, floats, booleans,
// (nested, possibly multi-line) arrays, and `#` comments. Enough for the
// manifest schema; unsupported constructs raise TomlError with a position.

#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace quatsub::toml {

struct TomlError : std::runtime_error {
    int line;
    TomlError(const std::string& msg, int line_)
        : std::runtime_error("toml: line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

class Value;
using Array = std::vector<Value>;
using Table = std::map<std::string, Value>;

class Value {
public:
    std::variant<std::string, std::int64_t, double, bool, Array, Table> v;

    Value() : v(Table{}) {}
    template <typename T>
    Value(T x) : v(std::move(x)) {}

    bool is_table() const { return std::holds_alternative<Table>(v); }
    bool is_array() const { return std::holds_alternative<Array>(v); }
    bool is_string() const { return std::holds_alternative<std::string>(v); }
    bool is_int() const { return std::holds_alternative<std::int64_t>(v); }
    bool is_float() const { return std::holds_alternative<double>(v); }
    bool is_bool() const { return std::holds_alternative<bool>(v); }

    const Table& table() const { return std::get<Table>(v); }
    Table& table() { return std::get<Table>(v); }
    const Array& array() const { return std::get<Array>(v); }
    const std::string& str() const { return std::get<std::string>(v); }
    std::int64_t integer() const { return std::get<std::int64_t>(v); }
    bool boolean() const { return std::get<bool>(v); }
    double number() const {
        if (is_int()) return static_cast<double>(std::get<std::int64_t>(v));
        return std::get<double>(v);
    }

    bool contains(const std::string& key) const {
        return is_table() && table().count(key) > 0;
    }
    const Value& at(const std::string& key) const {
        auto it = table().find(key);
        if (it == table().end()) throw TomlError("missing key '" + key + "'", 0);
        return it->second;
    }
};

namespace detail {

class TomlParser {
public:
    explicit TomlParser(const std::string& src) : s_(src) {}

    Table parse() {
        Table root;
        Table* current = &root;
        while (!at_end()) {
            skip_ws_comments_newlines();
            if (at_end()) break;
            if (peek() == '[') {
                current = open_table(root);
            } else {
                std::string key = parse_key();
                skip_ws();
                expect('=');
                skip_ws();
                Value val = parse_value();
                if (current->count(key)) err("duplicate key '" + key + "'");
                current->emplace(key, std::move(val));
                end_of_line();
            }
        }
        return root;
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;
    int line_ = 1;

    [[noreturn]] void err(const std::string& m) const { throw TomlError(m, line_); }
    bool at_end() const { return i_ >= s_.size(); }
    char peek() const { return s_[i_]; }
    char advance() {
        char c = s_[i_++];
        if (c == '\n') ++line_;
        return c;
    }
    void expect(char c) {
        if (at_end() || peek() != c) err(std::string("expected '") + c + "'");
        advance();
    }
    void skip_ws() {
        while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) advance();
    }
    void skip_comment() {
        if (!at_end() && peek() == '#')
            while (!at_end() && peek() != '\n') advance();
    }
    void skip_ws_comments_newlines() {
        for (;;) {
            skip_ws();
            skip_comment();
            if (!at_end() && peek() == '\n') {
                advance();
                continue;
            }
            break;
        }
    }
    void end_of_line() {
        skip_ws();
        skip_comment();
        if (at_end()) return;
        if (peek() != '\n') err("trailing characters after value");
        advance();
    }

    static bool key_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    }

    std::string parse_key() {
        if (!at_end() && peek() == '"') return parse_string();
        std::string k;
        while (!at_end() && key_char(peek())) k += advance();
        if (k.empty()) err("expected key");
        return k;
    }

    Table* open_table(Table& root) {
        expect('[');
        if (!at_end() && peek() == '[') err("arrays of tables are not supported");
        Table* cur = &root;
        for (;;) {
            skip_ws();
            std::string part = parse_key();
            skip_ws();
            auto [it, inserted] = cur->emplace(part, Value(Table{}));
            if (!it->second.is_table()) err("'" + part + "' is not a table");
            cur = &it->second.table();
            if (!at_end() && peek() == '.') {
                advance();
                continue;
            }
            break;
        }
        expect(']');
        end_of_line();
        return cur;
    }

    std::string parse_string() {
        expect('"');
        std::string out;
        while (!at_end() && peek() != '"') {
            char c = advance();
            if (c == '\n') err("unterminated string");
            if (c == '\\') {
                if (at_end()) err("unterminated escape");
                char e = advance();
                switch (e) {
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    default: err("unsupported escape");
                }
            } else {
                out += c;
            }
        }
        expect('"');
        return out;
    }

    Value parse_value() {
        if (at_end()) err("expected value");
        char c = peek();
        if (c == '"') return Value(parse_string());
        if (c == '[') return parse_array();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string word;
            while (!at_end() && std::isalpha(static_cast<unsigned char>(peek())))
                word += advance();
            if (word == "true") return Value(true);
            if (word == "false") return Value(false);
            err("unexpected token '" + word + "'");
        }
        return parse_number();
    }

    Value parse_array() {
        expect('[');
        Array arr;
        for (;;) {
            skip_ws_comments_newlines();
            if (at_end()) err("unterminated array");
            if (peek() == ']') {
                advance();
                break;
            }
            arr.push_back(parse_value());
            skip_ws_comments_newlines();
            if (!at_end() && peek() == ',') {
                advance();
                continue;
            }
            skip_ws_comments_newlines();
            if (at_end() || peek() != ']') err("expected ',' or ']' in array");
            advance();
            break;
        }
        return Value(std::move(arr));
    }

    Value parse_number() {
        std::size_t start = i_;
        bool is_float = false;
        if (!at_end() && (peek() == '+' || peek() == '-')) advance();
        while (!at_end()) {
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '_') {
                advance();
            } else if (c == '.' || c == 'e' || c == 'E') {
                is_float = true;
                advance();
                if (!at_end() && (peek() == '+' || peek() == '-') && (c == 'e' || c == 'E'))
                    advance();
            } else {
                break;
            }
        }
        std::string text = s_.substr(start, i_ - start);
        std::erase(text, '_');
        if (text.empty() || text == "+" || text == "-") err("expected value");
        try {
            if (is_float) return Value(std::stod(text));
            return Value(static_cast<std::int64_t>(std::stoll(text)));
        } catch (const std::exception&) {
            err("malformed number '" + text + "'");
        }
    }
};

}  // namespace detail

inline Table parse(const std::string& source) { return detail::TomlParser(source).parse(); }

}  // namespace quatsub::toml

#endif  // QUATSUB_TOML_HPP
