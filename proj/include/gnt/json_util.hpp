// json_util.hpp — strict JSON access helpers (unknown keys rejected, errors
// carry a JSON pointer)

#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace gnt {

// Config parse failure; `pointer` locates the offending node.
class config_error : public std::runtime_error {
public:
    config_error(const std::string& message, std::string pointer)
        : std::runtime_error(message + " [at " + (pointer.empty() ? "/" : pointer) + "]"),
          pointer_(std::move(pointer)) {}

    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

namespace jsonu {

using nlohmann::json;

inline void require_object(const json& j, const std::string& ptr) {
    if (!j.is_object()) throw config_error("expected a JSON object", ptr);
}

inline void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                                const std::string& ptr) {
    require_object(j, ptr);
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) { known = true; break; }
        if (!known) throw config_error("unknown key \"" + item.key() + "\"", ptr + "/" + item.key());
    }
}

inline const json& require_key(const json& j, const char* key, const std::string& ptr) {
    require_object(j, ptr);
    auto it = j.find(key);
    if (it == j.end()) throw config_error(std::string("missing key \"") + key + "\"", ptr);
    return *it;
}

inline double get_number(const json& j, const char* key, const std::string& ptr) {
    const json& v = require_key(j, key, ptr);
    if (!v.is_number()) throw config_error(std::string("\"") + key + "\" must be a number", ptr + "/" + key);
    return v.get<double>();
}

inline double get_number_or(const json& j, const char* key, double fallback, const std::string& ptr) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) throw config_error(std::string("\"") + key + "\" must be a number", ptr + "/" + key);
    return v.get<double>();
}

inline long long get_integer(const json& j, const char* key, const std::string& ptr) {
    const json& v = require_key(j, key, ptr);
    if (!v.is_number_integer()) throw config_error(std::string("\"") + key + "\" must be an integer", ptr + "/" + key);
    return v.get<long long>();
}

inline std::string get_string(const json& j, const char* key, const std::string& ptr) {
    const json& v = require_key(j, key, ptr);
    if (!v.is_string()) throw config_error(std::string("\"") + key + "\" must be a string", ptr + "/" + key);
    return v.get<std::string>();
}

} // namespace jsonu
} // namespace gnt
