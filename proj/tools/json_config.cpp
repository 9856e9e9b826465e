#include "json_config.hpp"

#include "json.hpp"

namespace asense::cli {
namespace {

using nlohmann::json;

std::string scalarText(const json& v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_boolean()) {
        return v.get<bool>() ? "true" : "false";
    }
    return v.dump();
}

void flatten(const json& node, std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& out) {
    for (const auto& [key, value] : node.items()) {
        if (value.is_object()) {
            parents.push_back(key);
            flatten(value, parents, out);
            parents.pop_back();
            continue;
        }
        CLI::ConfigItem item;
        item.parents = parents;
        item.name = key;
        if (value.is_array()) {
            for (const auto& v : value) {
                item.inputs.push_back(scalarText(v));
            }
        } else {
            item.inputs.push_back(scalarText(value));
        }
        out.push_back(std::move(item));
    }
}

}  // namespace

std::string JsonConfig::to_config(const CLI::App*, bool, bool, std::string) const {
    throw CLI::FileError("writing JSON configuration files is not supported");
}

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
    json root;
    try {
        root = json::parse(input);
    } catch (const json::parse_error& e) {
        throw CLI::ConversionError(std::string("invalid JSON config: ") + e.what());
    }
    if (!root.is_object()) {
        throw CLI::ConversionError("JSON config must be an object");
    }
    std::vector<CLI::ConfigItem> items;
    std::vector<std::string> parents;
    flatten(root, parents, items);
    return items;
}

}  // namespace asense::cli
