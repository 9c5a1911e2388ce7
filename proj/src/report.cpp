#include "birkhoff/report.hpp"

#include <cmath>
#include <cstdio>

namespace birkhoff {

std::string JsonWriter::format_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string JsonWriter::escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
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
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

void JsonWriter::newline_indent() {
    out_ += '\n';
    out_.append(2 * needs_comma_.size(), ' ');
}

void JsonWriter::before_value() {
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (!needs_comma_.empty()) {
        if (needs_comma_.back()) out_ += ',';
        needs_comma_.back() = true;
        newline_indent();
    }
}

void JsonWriter::begin_object() {
    before_value();
    out_ += '{';
    needs_comma_.push_back(false);
}

void JsonWriter::end_object() {
    const bool had_content = needs_comma_.back();
    needs_comma_.pop_back();
    if (had_content) newline_indent();
    out_ += '}';
}

void JsonWriter::begin_array() {
    before_value();
    out_ += '[';
    needs_comma_.push_back(false);
}

void JsonWriter::end_array() {
    const bool had_content = needs_comma_.back();
    needs_comma_.pop_back();
    if (had_content) newline_indent();
    out_ += ']';
}

void JsonWriter::key(const std::string& k) {
    if (needs_comma_.back()) out_ += ',';
    needs_comma_.back() = true;
    newline_indent();
    out_ += '"';
    out_ += escape(k);
    out_ += "\": ";
    pending_key_ = true;
}

void JsonWriter::value(double v) {
    before_value();
    out_ += format_double(v);
}

void JsonWriter::value(const std::string& v) {
    before_value();
    out_ += '"';
    out_ += escape(v);
    out_ += '"';
}

void JsonWriter::value(const char* v) { value(std::string(v)); }

void JsonWriter::value(bool v) {
    before_value();
    out_ += v ? "true" : "false";
}

void JsonWriter::value(std::int64_t v) {
    before_value();
    out_ += std::to_string(v);
}

void JsonWriter::value(std::uint64_t v) {
    before_value();
    out_ += std::to_string(v);
}

void JsonWriter::null_value() {
    before_value();
    out_ += "null";
}

void JsonWriter::kv(const std::string& k, double v) {
    key(k);
    value(v);
}
void JsonWriter::kv(const std::string& k, const std::string& v) {
    key(k);
    value(v);
}
void JsonWriter::kv(const std::string& k, const char* v) {
    key(k);
    value(v);
}
void JsonWriter::kv(const std::string& k, bool v) {
    key(k);
    value(v);
}
void JsonWriter::kv(const std::string& k, std::int64_t v) {
    key(k);
    value(v);
}
void JsonWriter::kv(const std::string& k, std::uint64_t v) {
    key(k);
    value(v);
}

std::string JsonWriter::take() {
    out_ += '\n';
    return std::move(out_);
}

}  // namespace birkhoff
