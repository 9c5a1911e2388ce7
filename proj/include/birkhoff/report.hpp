#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace birkhoff {

/// Minimal streaming JSON writer for reports. Doubles are rendered with
/// %.17g so that values round-trip and reports stay byte-stable for
/// identical inputs; non-finite values become null. Output uses two-space
/// indentation and a trailing newline.
class JsonWriter {
public:
    void begin_object();
    void end_object();
    void begin_array();
    void end_array();
    void key(const std::string& k);

    void value(double v);
    void value(const std::string& v);
    void value(const char* v);
    void value(bool v);
    void value(std::int64_t v);
    void value(std::uint64_t v);
    void value(int v) { value(static_cast<std::int64_t>(v)); }
    void null_value();

    void kv(const std::string& k, double v);
    void kv(const std::string& k, const std::string& v);
    void kv(const std::string& k, const char* v);
    void kv(const std::string& k, bool v);
    void kv(const std::string& k, std::int64_t v);
    void kv(const std::string& k, std::uint64_t v);
    void kv(const std::string& k, int v) { kv(k, static_cast<std::int64_t>(v)); }

    /// Finishes the document (appends the final newline) and returns it.
    std::string take();

    static std::string format_double(double v);
    static std::string escape(const std::string& s);

private:
    void before_value();
    void newline_indent();

    std::string out_;
    std::vector<bool> needs_comma_;  // one flag per open container
    bool pending_key_ = false;
};

}  // namespace birkhoff
