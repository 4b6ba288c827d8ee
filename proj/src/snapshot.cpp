#include "ans/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "ans/errors.hpp"

namespace ans {

namespace {

constexpr char kMagic[4] = {'A', 'N', 'S', '1'};
constexpr std::uint16_t kFormatVersion = 1;
constexpr std::size_t kHeaderSize = 4 + 2 + 4 + 8 + 8 + 1;

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>(v >> 8));
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f64(std::string& out, double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
}

std::uint16_t get_u16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

double get_f64(const unsigned char* p) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return std::bit_cast<double>(bits);
}

}  // namespace

void write_snapshot(const SpectralField& f, const std::string& path, double time) {
    const Grid& g = *f.grid;
    std::string out;
    out.reserve(kHeaderSize + 2 * g.size * 16);
    out.append(kMagic, 4);
    put_u16(out, kFormatVersion);
    put_u32(out, static_cast<std::uint32_t>(g.N));
    put_f64(out, g.L);
    put_f64(out, time);
    out.push_back(static_cast<char>(2));
    for (int c = 0; c < 2; ++c) {
        const cplx* data = f.comp(c);
        for (std::size_t i = 0; i < g.size; ++i) {
            put_f64(out, data[i].real());
            put_f64(out, data[i].imag());
        }
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw ResourceError("cannot open '" + path + "' for writing");
    file.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!file) throw ResourceError("short write to '" + path + "'");
}

SpectralField read_snapshot(const std::string& path, double* time_out) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw ConfigError("cannot open snapshot '" + path + "'");
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(file)),
                                     std::istreambuf_iterator<char>());
    if (bytes.size() < kHeaderSize) throw ConfigError("snapshot '" + path + "' is truncated");
    if (std::memcmp(bytes.data(), kMagic, 4) != 0)
        throw ConfigError("snapshot '" + path + "' has a bad magic header");
    const unsigned char* p = bytes.data() + 4;
    std::uint16_t version = get_u16(p);
    p += 2;
    if (version != kFormatVersion)
        throw ConfigError("snapshot '" + path + "' has unsupported format version " +
                          std::to_string(version));
    std::uint32_t N = get_u32(p);
    p += 4;
    double L = get_f64(p);
    p += 8;
    double time = get_f64(p);
    p += 8;
    unsigned char ncomp = *p++;
    if (ncomp != 2)
        throw ConfigError("snapshot '" + path + "' has component count " +
                          std::to_string(static_cast<int>(ncomp)) + ", expected 2");

    auto g = make_grid(static_cast<int>(N), L);
    const std::size_t expect = kHeaderSize + 2 * g->size * 16;
    if (bytes.size() < expect) throw ConfigError("snapshot '" + path + "' is truncated");
    if (bytes.size() > expect)
        throw ConfigError("snapshot '" + path + "' has trailing bytes");

    SpectralField f(g);
    for (int c = 0; c < 2; ++c) {
        cplx* data = f.comp(c);
        for (std::size_t i = 0; i < g->size; ++i) {
            double re = get_f64(p);
            p += 8;
            double im = get_f64(p);
            p += 8;
            data[i] = cplx(re, im);
        }
    }
    validate_field(f);
    if (time_out) *time_out = time;
    return f;
}

}  // namespace ans
