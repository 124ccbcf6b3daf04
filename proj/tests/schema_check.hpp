#pragma once

// Minimal structural validator for the shipped schemas: handles type,
// required, properties, items, enum and local $ref. Test support only.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace hk::schema {

using nlohmann::json;

inline json load(const std::string& schema_dir, const std::string& name) {
    std::ifstream f(schema_dir + "/" + name);
    if (!f) throw std::runtime_error("missing schema: " + name);
    json j;
    f >> j;
    return j;
}

inline bool validate(const json& value, const json& schema, const std::string& schema_dir,
                     std::string* error) {
    if (schema.contains("$ref"))
        return validate(value, load(schema_dir, schema["$ref"].get<std::string>()), schema_dir,
                        error);
    if (schema.contains("type")) {
        const std::string t = schema["type"].get<std::string>();
        const bool ok = (t == "object" && value.is_object()) ||
                        (t == "array" && value.is_array()) ||
                        (t == "string" && value.is_string()) ||
                        (t == "integer" && value.is_number_integer()) ||
                        (t == "number" && value.is_number()) ||
                        (t == "boolean" && value.is_boolean());
        if (!ok) {
            if (error) *error = "expected type " + t + " got " + value.dump().substr(0, 80);
            return false;
        }
    }
    if (schema.contains("enum")) {
        bool found = false;
        for (const auto& e : schema["enum"])
            if (e == value) found = true;
        if (!found) {
            if (error) *error = "value " + value.dump() + " not in enum";
            return false;
        }
    }
    if (schema.contains("required"))
        for (const auto& key : schema["required"])
            if (!value.contains(key.get<std::string>())) {
                if (error) *error = "missing required key " + key.get<std::string>();
                return false;
            }
    if (schema.contains("properties"))
        for (const auto& [key, sub] : schema["properties"].items())
            if (value.contains(key) && !validate(value[key], sub, schema_dir, error)) {
                if (error) *error = key + ": " + *error;
                return false;
            }
    if (schema.contains("items") && value.is_array())
        for (const auto& item : value)
            if (!validate(item, schema["items"], schema_dir, error)) return false;
    return true;
}

inline bool validate_text(const std::string& text, const std::string& schema_name,
                          std::string* error) {
    const std::string dir = std::string(HK_SOURCE_DIR) + "/schemas";
    json value;
    try {
        value = json::parse(text);
    } catch (const json::exception& e) {
        if (error) *error = e.what();
        return false;
    }
    return validate(value, load(dir, schema_name), dir, error);
}

} // namespace hk::schema
