#pragma once

#include <cstdio>
#include <initializer_list>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace midsub {

// Minimal deterministic JSON writer: insertion-ordered object keys, floating
// values printed with 17 significant digits, no locale surprises. Output from
// identical inputs is byte-identical.
class Json {
public:
    using Array = std::vector<Json>;
    using Object = std::vector<std::pair<std::string, Json>>;

    Json() : value_(nullptr) {}
    Json(std::nullptr_t) : value_(nullptr) {}
    Json(bool b) : value_(b) {}
    Json(int v) : value_((std::int64_t)v) {}
    Json(std::int64_t v) : value_(v) {}
    Json(std::size_t v) : value_((std::int64_t)v) {}
    Json(double v) : value_(v) {}
    Json(const char* s) : value_(std::string(s)) {}
    Json(std::string s) : value_(std::move(s)) {}
    Json(Array a) : value_(std::move(a)) {}

    static Json object() { Json j; j.value_ = Object{}; return j; }
    static Json array() { Json j; j.value_ = Array{}; return j; }

    Json& set(const std::string& key, Json v) {
        std::get<Object>(value_).emplace_back(key, std::move(v));
        return *this;
    }
    Json& push(Json v) {
        std::get<Array>(value_).push_back(std::move(v));
        return *this;
    }

    std::string dump(int indent = 0) const {
        std::string out;
        write(out, indent, 0);
        if (indent > 0) out += '\n';
        return out;
    }

private:
    std::variant<std::nullptr_t, bool, std::int64_t, double, std::string, Array, Object> value_;

    static void escape(std::string& out, const std::string& s) {
        out += '"';
        for (char c : s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                case '\r': out += "\\r"; break;
                default:
                    if ((unsigned char)c < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out += buf;
                    } else {
                        out += c;
                    }
            }
        }
        out += '"';
    }

    void write(std::string& out, int indent, int depth) const {
        auto pad = [&](int d) {
            if (indent > 0) { out += '\n'; out.append((std::size_t)indent * d, ' '); }
        };
        if (std::holds_alternative<std::nullptr_t>(value_)) {
            out += "null";
        } else if (auto* b = std::get_if<bool>(&value_)) {
            out += *b ? "true" : "false";
        } else if (auto* i = std::get_if<std::int64_t>(&value_)) {
            out += std::to_string(*i);
        } else if (auto* d = std::get_if<double>(&value_)) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", *d);
            out += buf;
        } else if (auto* s = std::get_if<std::string>(&value_)) {
            escape(out, *s);
        } else if (auto* a = std::get_if<Array>(&value_)) {
            if (a->empty()) { out += "[]"; return; }
            out += '[';
            for (std::size_t k = 0; k < a->size(); ++k) {
                if (k) out += indent > 0 ? "," : ", ";
                pad(depth + 1);
                (*a)[k].write(out, indent, depth + 1);
            }
            pad(depth);
            out += ']';
        } else if (auto* o = std::get_if<Object>(&value_)) {
            if (o->empty()) { out += "{}"; return; }
            out += '{';
            for (std::size_t k = 0; k < o->size(); ++k) {
                if (k) out += indent > 0 ? "," : ", ";
                pad(depth + 1);
                escape(out, (*o)[k].first);
                out += indent > 0 ? ": " : ": ";
                (*o)[k].second.write(out, indent, depth + 1);
            }
            pad(depth);
            out += '}';
        }
    }
};

} // namespace midsub
