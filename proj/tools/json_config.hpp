#pragma once

#include <istream>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace asense::cli {

/// Reads CLI11 configuration from JSON. Nested objects name subcommands, e.g.
///   {"threads": 2, "simulate": {"k": 1, "t-end": 60}}
/// Arrays become multi-valued options. Writing configs back out is not supported.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App* app, bool defaultAlso, bool writeDescription,
                          std::string prefix) const override;
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;
};

}  // namespace asense::cli
