#include "wlab/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace wlab {

namespace {

void fail(const std::filesystem::path& path, const std::string& what) {
    throw std::runtime_error("I/O error on '" + path.string() + "': " + what);
}

std::ofstream open_out(const std::filesystem::path& path, bool binary) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) fail(path, "cannot open for writing");
    return out;
}

void put_u64_le(std::ofstream& out, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 8);
}

void put_f64_le(std::ofstream& out, double d) {
    std::uint64_t v;
    std::memcpy(&v, &d, 8);
    put_u64_le(out, v);
}

std::uint64_t get_u64_le(std::ifstream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

constexpr char kMagic[8] = {'W', 'L', 'A', 'B', '0', '0', '0', '1'};

}  // namespace

std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_series(const std::vector<DivergenceReport>& reports,
                  const std::filesystem::path& path) {
    auto out = open_out(path, false);
    out << "t,norm,energy,purity,min_eig,diag_dist,band_inner,band_mid,band_outer\n";
    for (const auto& r : reports) {
        out << format17(r.t) << ',' << format17(r.norm) << ','
            << format17(r.energy) << ',' << format17(r.purity) << ','
            << format17(r.min_eig) << ',' << format17(r.diag_dist) << ','
            << format17(r.band_inner) << ',' << format17(r.band_mid) << ','
            << format17(r.band_outer) << '\n';
    }
    if (!out) fail(path, "write failed");
}

void write_snapshot_csv(const WignerState& wig, const PhaseSpaceGrid& grid,
                        const std::filesystem::path& path) {
    auto out = open_out(path, false);
    out << "x,p,F\n";
    for (int i = 0; i < grid.nx; ++i)
        for (int j = 0; j < grid.np; ++j)
            out << format17(grid.x_values[i]) << ',' << format17(grid.p_values[j])
                << ',' << format17(wig.f[grid.at(i, j)]) << '\n';
    if (!out) fail(path, "write failed");
}

void write_snapshot_binary(const WignerState& wig, const PhaseSpaceGrid& grid,
                           const std::filesystem::path& path) {
    auto out = open_out(path, true);
    out.write(kMagic, 8);
    put_u64_le(out, static_cast<std::uint64_t>(grid.nx));
    put_u64_le(out, static_cast<std::uint64_t>(grid.np));
    put_u64_le(out, 0);  // reserved
    for (double v : wig.f) put_f64_le(out, v);
    if (!out) fail(path, "write failed");
}

BinarySnapshot read_snapshot_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open for reading");
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kMagic, 8) != 0)
        fail(path, "bad magic (not a WLAB0001 snapshot)");
    BinarySnapshot snap;
    snap.nx = get_u64_le(in);
    snap.np = get_u64_le(in);
    get_u64_le(in);  // reserved
    snap.f.resize(snap.nx * snap.np);
    for (double& v : snap.f) {
        const std::uint64_t raw = get_u64_le(in);
        std::memcpy(&v, &raw, 8);
    }
    if (!in) fail(path, "truncated snapshot");
    return snap;
}

void write_hydro_csv(const HydroFields& fields, const std::vector<double>& q,
                     const PhaseSpaceGrid& grid,
                     const std::filesystem::path& path) {
    auto out = open_out(path, false);
    out << "x,n,pbar,sigma2,w,i,q\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i < grid.nx; ++i) {
        const double w = fields.W.empty() ? nan : fields.W[i];
        const double ii = fields.I.empty() ? nan : fields.I[i];
        const double qq = q.empty() ? nan : q[i];
        out << format17(grid.x_values[i]) << ',' << format17(fields.n[i]) << ','
            << format17(fields.pbar[i]) << ',' << format17(fields.sigma2[i])
            << ',' << format17(w) << ',' << format17(ii) << ',' << format17(qq)
            << '\n';
    }
    if (!out) fail(path, "write failed");
}

}  // namespace wlab
