#include "svort/io.hpp"

#include <cstdio>
#include <cstring>
#include <stdexcept>

namespace svort {

namespace {

constexpr char kMagic[8] = {'S', 'V', 'O', 'R', 'T', 'F', 'L', 'D'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
    char b[4];
    std::memcpy(b, &v, 4);
    out.write(b, 4);
}

void put_f64(std::ostream& out, double v) {
    char b[8];
    std::memcpy(b, &v, 8);
    out.write(b, 8);
}

std::uint32_t get_u32(std::istream& in) {
    char b[4];
    in.read(b, 4);
    std::uint32_t v;
    std::memcpy(&v, b, 4);
    return v;
}

double get_f64(std::istream& in) {
    char b[8];
    in.read(b, 8);
    double v;
    std::memcpy(&v, b, 8);
    return v;
}

}  // namespace

std::uint64_t fnv1a(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t hash = 14695981039346656037ull;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= p[i];
        hash *= 1099511628211ull;
    }
    return hash;
}

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for checksum: " + path);
    std::uint64_t hash = 14695981039346656037ull;
    char buf[65536];
    while (in) {
        in.read(buf, sizeof(buf));
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 1099511628211ull;
        }
    }
    return hash;
}

void write_snapshot(const std::string& path, int n, double length, double time,
                    const std::vector<double>& values) {
    if (n <= 0 || values.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("snapshot value count does not match side length");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open snapshot for writing: " + path);
    out.write(kMagic, 8);
    put_u32(out, kVersion);
    put_u32(out, static_cast<std::uint32_t>(n));
    put_f64(out, length);
    put_f64(out, time);
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(double)));
    if (!out) throw std::runtime_error("snapshot write failed: " + path);
}

void write_snapshot(const std::string& path, const ScalarField& field, double time) {
    write_snapshot(path, field.grid.n, field.grid.length, time, field.values);
}

RawSnapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open snapshot: " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kMagic, 8) != 0)
        throw std::runtime_error("not a field snapshot: " + path);
    const std::uint32_t version = get_u32(in);
    if (version != kVersion) throw std::runtime_error("unsupported snapshot version");
    RawSnapshot snap;
    snap.n = static_cast<int>(get_u32(in));
    snap.length = get_f64(in);
    snap.time = get_f64(in);
    if (snap.n <= 0 || snap.n > 1 << 20) throw std::runtime_error("corrupt snapshot header");
    snap.values.resize(static_cast<std::size_t>(snap.n) * snap.n);
    in.read(reinterpret_cast<char*>(snap.values.data()),
            static_cast<std::streamsize>(snap.values.size() * sizeof(double)));
    if (!in) throw std::runtime_error("snapshot payload truncated: " + path);
    return snap;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : out_(path), columns_(columns.size()) {
    if (!out_) throw std::runtime_error("cannot open CSV for writing: " + path);
    if (columns.empty()) throw std::invalid_argument("CSV needs at least one column");
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out_ << ',';
        out_ << columns[i];
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_) throw std::invalid_argument("CSV row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ << ',';
        out_ << format_double(values[i]);
    }
    out_ << '\n';
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace svort
