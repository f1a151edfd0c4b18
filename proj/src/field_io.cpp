#include "mdllab/field_io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "mdllab/errors.hpp"

namespace mdllab {

namespace {

constexpr char kMagic[4] = {'M', 'D', 'L', '1'};

template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}

} // namespace

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_field_binary(const Field& f, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot open for writing: " + path.string());
    const Grid& g = f.grid();
    os.write(kMagic, 4);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(g.dims()));
    for (int a = 0; a < g.dims(); ++a) put<std::uint32_t>(os, static_cast<std::uint32_t>(g.n(a)));
    for (int a = 0; a < g.dims(); ++a) {
        put<double>(os, g.min(a));
        put<double>(os, g.max(a));
    }
    for (const auto& v : f.values()) {
        put<double>(os, v.real());
        put<double>(os, v.imag());
    }
    if (!os) throw ConfigError("write failed: " + path.string());
}

Field read_field_binary(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("cannot open: " + path.string());
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw ConfigError("not a field snapshot: " + path.string());
    const auto dims = get<std::uint32_t>(is);
    if (dims != 1 && dims != 2) throw ConfigError("bad dims in snapshot: " + path.string());
    std::array<int, 2> n{1, 1};
    for (std::uint32_t a = 0; a < dims; ++a) n[a] = static_cast<int>(get<std::uint32_t>(is));
    std::array<double, 2> lo{}, hi{};
    for (std::uint32_t a = 0; a < dims; ++a) {
        lo[a] = get<double>(is);
        hi[a] = get<double>(is);
    }
    GridPtr g = (dims == 1) ? Grid::line(n[0], lo[0], hi[0])
                            : Grid::plane(n[0], lo[0], hi[0], n[1], lo[1], hi[1]);
    std::vector<Complex> values(g->size());
    for (auto& v : values) {
        const double re = get<double>(is);
        const double im = get<double>(is);
        v = {re, im};
    }
    if (!is) throw ConfigError("truncated snapshot: " + path.string());
    return Field(g, std::move(values));
}

void write_field_csv(const Field& f, const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open for writing: " + path.string());
    const Grid& g = f.grid();
    if (g.dims() == 1) {
        os << "x,re,im\n";
        for (int i = 0; i < g.n(0); ++i) {
            const Complex v = f[i];
            os << format_g17(g.coord(0, i)) << ',' << format_g17(v.real()) << ','
               << format_g17(v.imag()) << '\n';
        }
    } else {
        os << "x,y,re,im\n";
        for (int ix = 0; ix < g.n(0); ++ix)
            for (int iy = 0; iy < g.n(1); ++iy) {
                const Complex v = f[g.index(ix, iy)];
                os << format_g17(g.coord(0, ix)) << ',' << format_g17(g.coord(1, iy)) << ','
                   << format_g17(v.real()) << ',' << format_g17(v.imag()) << '\n';
            }
    }
}

} // namespace mdllab
