#include "wigner/cli/manifest.hpp"

#include "wigner/errors.hpp"
#include "wigner/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

namespace wigner::cli {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error("sha256: digest failed");
    std::ostringstream os;
    for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

std::string sha256_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("sha256: cannot read " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return sha256_hex(buf.str());
}

nlohmann::json build_manifest(const fs::path& dir, const nlohmann::json& extra) {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.is_regular_file() && e.path().filename() != "manifest.json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    nlohmann::json m = extra;
    m["version"] = kVersion;
    m["files"] = nlohmann::json::array();
    for (const auto& f : files)
        m["files"].push_back({{"path", fs::relative(f, dir).generic_string()},
                              {"sha256", sha256_file(f)},
                              {"bytes", fs::file_size(f)}});
    return m;
}

void write_manifest(const fs::path& dir, const nlohmann::json& extra) {
    io::write_file(dir / "manifest.json", build_manifest(dir, extra).dump(2) + "\n");
}

}  // namespace wigner::cli
