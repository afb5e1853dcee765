#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>

namespace wigner::cli {

inline constexpr const char* kVersion = "0.1.0";

std::string sha256_hex(const std::string& data);
std::string sha256_file(const std::filesystem::path& p);

// Records every regular file under `dir` (except the manifest itself) with its checksum.
nlohmann::json build_manifest(const std::filesystem::path& dir, const nlohmann::json& extra);
void write_manifest(const std::filesystem::path& dir, const nlohmann::json& extra);

}  // namespace wigner::cli
