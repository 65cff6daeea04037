#pragma once

// Minimal JSON emission with deterministic output: keys keep insertion order
// and every number is printed with 17 significant digits, so identical runs
// produce identical bytes and parsed values round-trip exactly.

#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace crosssec {

/// Fixed 17-significant-digit rendering used for every number the tool emits.
inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class JsonValue {
  public:
    JsonValue() : kind_(Kind::Null) {}
    JsonValue(bool b) : kind_(Kind::Bool), bool_(b) {}
    JsonValue(double d) : kind_(Kind::Number), num_(format_double(d)) {}
    JsonValue(int i) : kind_(Kind::Number), num_(std::to_string(i)) {}
    JsonValue(long i) : kind_(Kind::Number), num_(std::to_string(i)) {}
    JsonValue(unsigned long long i) : kind_(Kind::Number), num_(std::to_string(i)) {}
    JsonValue(const char* s) : kind_(Kind::String), str_(s) {}
    JsonValue(std::string s) : kind_(Kind::String), str_(std::move(s)) {}

    static JsonValue object() {
        JsonValue v;
        v.kind_ = Kind::Object;
        return v;
    }
    static JsonValue array() {
        JsonValue v;
        v.kind_ = Kind::Array;
        return v;
    }

    JsonValue& set(const std::string& key, JsonValue value) {
        members_.emplace_back(key, std::move(value));
        return *this;
    }
    JsonValue& push(JsonValue value) {
        items_.push_back(std::move(value));
        return *this;
    }

    void dump(std::string& out) const {
        switch (kind_) {
            case Kind::Null: out += "null"; break;
            case Kind::Bool: out += bool_ ? "true" : "false"; break;
            case Kind::Number: out += num_; break;
            case Kind::String: dump_string(str_, out); break;
            case Kind::Array: {
                out += '[';
                for (std::size_t i = 0; i < items_.size(); ++i) {
                    if (i) out += ',';
                    items_[i].dump(out);
                }
                out += ']';
                break;
            }
            case Kind::Object: {
                out += '{';
                for (std::size_t i = 0; i < members_.size(); ++i) {
                    if (i) out += ',';
                    dump_string(members_[i].first, out);
                    out += ':';
                    members_[i].second.dump(out);
                }
                out += '}';
                break;
            }
        }
    }

    std::string dump() const {
        std::string out;
        dump(out);
        out += '\n';
        return out;
    }

  private:
    enum class Kind { Null, Bool, Number, String, Array, Object };

    static void dump_string(const std::string& s, std::string& out) {
        out += '"';
        for (char c : s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                case '\r': out += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
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

    Kind kind_;
    bool bool_ = false;
    std::string num_;
    std::string str_;
    std::vector<JsonValue> items_;
    std::vector<std::pair<std::string, JsonValue>> members_;
};

}  // namespace crosssec
