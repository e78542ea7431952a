#include "hallmild/field_io.hpp"

#include <cstring>
#include <fstream>

#include <json.hpp>

namespace hallmild {

namespace {

constexpr char kMagic[4] = {'H', 'M', 'F', '1'};
constexpr std::uint32_t kLayoutC64Interleaved = 1;

template <typename T>
void put(std::ofstream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T take(std::ifstream& in) {
    T v;
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw IoError("field file truncated");
    return v;
}

}  // namespace

void write_field(const std::string& path, const SpectralField& f, const std::string& operation,
                 const std::string& provenance) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open field file for writing: " + path);
    out.write(kMagic, 4);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid().n()));
    put<double>(out, f.grid().box_length());
    put<std::uint32_t>(out, static_cast<std::uint32_t>(f.ncomp()));
    put<std::uint32_t>(out, kLayoutC64Interleaved);
    const std::size_t n3 = f.grid().n3();
    for (std::size_t m = 0; m < n3; ++m)
        for (int c = 0; c < f.ncomp(); ++c) {
            put<float>(out, static_cast<float>(f.at(c, m).real()));
            put<float>(out, static_cast<float>(f.at(c, m).imag()));
        }
    if (!out) throw IoError("failed writing field file: " + path);
    out.close();

    nlohmann::json side;
    side["grid"] = {{"n", f.grid().n()}, {"box_length", f.grid().box_length()}};
    side["n_components"] = f.ncomp();
    side["layout"] = "c64-interleaved-rowmajor";
    side["creation"] = {{"operation", operation}};
    side["provenance"] = provenance;
    side["is_solenoidal"] = f.is_solenoidal;
    std::ofstream js(path + ".json", std::ios::trunc);
    if (!js) throw IoError("cannot open sidecar for writing: " + path + ".json");
    js << side.dump(2) << "\n";
}

SpectralField read_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open field file: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw IoError("field file magic mismatch: " + path);
    const auto n = take<std::uint32_t>(in);
    const auto L = take<double>(in);
    const auto ncomp = take<std::uint32_t>(in);
    const auto layout = take<std::uint32_t>(in);
    if (layout != kLayoutC64Interleaved) throw IoError("field file layout tag unsupported");
    if (ncomp == 0 || ncomp > 16) throw IoError("field file component count out of range");
    Grid g(static_cast<int>(n), L);
    SpectralField f(g, static_cast<int>(ncomp));
    for (std::size_t m = 0; m < g.n3(); ++m)
        for (std::uint32_t c = 0; c < ncomp; ++c) {
            const float re = take<float>(in);
            const float im = take<float>(in);
            f.at(static_cast<int>(c), m) = Complex(re, im);
        }
    return f;
}

}  // namespace hallmild
