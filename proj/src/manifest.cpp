#include "hallmild/manifest.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hallmild/errors.hpp"

namespace hallmild {

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("sha256: cannot open " + path);
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx) throw Error("sha256: context allocation failed");
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof(buf));
        EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

ExperimentManifest::ExperimentManifest(std::string tool_version) {
    doc_["tool_version"] = std::move(tool_version);
    doc_["files"] = nlohmann::json::array();
    doc_["timings_ms"] = nlohmann::json::object();
    doc_["complete"] = true;
}

void ExperimentManifest::set_config_text(const std::string& text) { doc_["config"] = text; }

void ExperimentManifest::set(const std::string& key, const nlohmann::json& value) {
    doc_[key] = value;
}

void ExperimentManifest::add_timing(const std::string& phase, double wall_ms) {
    doc_["timings_ms"][phase] = wall_ms;
}

void ExperimentManifest::add_file(const std::string& path) {
    namespace fs = std::filesystem;
    doc_["files"].push_back({{"path", path},
                             {"bytes", static_cast<std::uint64_t>(fs::file_size(path))},
                             {"sha256", sha256_file(path)}});
}

void ExperimentManifest::write_atomic(const std::string& path) const {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw IoError("manifest: cannot open " + tmp);
        out << doc_.dump(2) << "\n";
        if (!out) throw IoError("manifest: write failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("manifest: atomic rename failed: " + ec.message());
}

}  // namespace hallmild
