#include "sns/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sns {

namespace {

constexpr char kMagic[4] = {'S', 'N', 'S', '2'};
constexpr std::uint32_t kFormatVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64(std::ostream& os, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void save_snapshot(const std::string& path, const SpectralVelocity& u) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("save_snapshot: cannot open " + path);
    os.write(kMagic, 4);
    put_u32(os, kFormatVersion);
    put_u32(os, static_cast<std::uint32_t>(u.grid.modes_per_dim));
    for (int c = 0; c < 2; ++c)
        for (const cplx& z : u.comp[c]) {
            put_f64(os, z.real());
            put_f64(os, z.imag());
        }
    if (!os) throw std::runtime_error("save_snapshot: write failed for " + path);
}

SpectralVelocity load_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("load_snapshot: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("load_snapshot: bad magic in " + path);
    const std::uint32_t version = get_u32(is);
    if (version != kFormatVersion)
        throw std::runtime_error("load_snapshot: unsupported format version " +
                                 std::to_string(version));
    const std::uint32_t n = get_u32(is);
    SpectralVelocity u{GridSpec(static_cast<int>(n))};
    for (int c = 0; c < 2; ++c)
        for (cplx& z : u.comp[c]) {
            const double re = get_f64(is);
            const double im = get_f64(is);
            z = cplx(re, im);
        }
    if (!is) throw std::runtime_error("load_snapshot: truncated file " + path);
    return u;
}

std::string ledger_csv(const StepLedger& ledger, double dt) {
    std::ostringstream os;
    os << "m,t,energy,grad_energy,dissipation,energy_defect,fp_iters,fp_residual\n";
    if (!ledger.steps.empty()) {
        const LedgerEntry& first = ledger.steps.front();
        os << "0,0," << fmt17(first.energy_before) << ',' << fmt17(first.h1_before) << ",0,0,0,0\n";
    }
    for (size_t m = 0; m < ledger.steps.size(); ++m) {
        const LedgerEntry& e = ledger.steps[m];
        os << (m + 1) << ',' << fmt17(static_cast<double>(m + 1) * dt) << ','
           << fmt17(e.energy_after) << ',' << fmt17(e.h1_after) << ',' << fmt17(e.dissipation)
           << ',' << fmt17(e.energy_defect) << ',' << e.fp_iterations << ','
           << fmt17(e.fp_residual) << '\n';
    }
    return os.str();
}

void write_ledger_csv(const std::string& path, const StepLedger& ledger, double dt) {
    write_text_file(path, ledger_csv(ledger, dt));
}

std::string convergence_csv(const ErrorReport& report) {
    std::ostringstream os;
    os << "M,dt,mse_mean,mse_stderr,samples\n";
    for (const LevelStats& l : report.levels)
        os << l.level << ',' << fmt17(l.dt) << ',' << fmt17(l.mse_mean) << ','
           << fmt17(l.mse_stderr) << ',' << l.samples << '\n';
    return os.str();
}

void write_convergence_csv(const std::string& path, const ErrorReport& report) {
    write_text_file(path, convergence_csv(report));
}

std::string summary_json(const ErrorReport& report) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"alpha_fit\": " << fmt17(report.alpha_fit) << ",\n";
    os << "  \"samples\": " << report.samples << ",\n";
    os << "  \"master_seed\": " << report.master_seed << ",\n";
    os << "  \"levels\": [\n";
    for (size_t i = 0; i < report.levels.size(); ++i) {
        const LevelStats& l = report.levels[i];
        os << "    {\"M\": " << l.level << ", \"dt\": " << fmt17(l.dt)
           << ", \"mse_mean\": " << fmt17(l.mse_mean)
           << ", \"mse_stderr\": " << fmt17(l.mse_stderr)
           << ", \"max_mean_sq_l2\": " << fmt17(l.max_mean_sq) << "}"
           << (i + 1 < report.levels.size() ? ",\n" : "\n");
    }
    os << "  ]\n}\n";
    return os.str();
}

void write_summary(const std::string& path, const ErrorReport& report) {
    write_text_file(path, summary_json(report));
}

std::string pressure_stats_csv(const std::vector<PressureStatsRow>& rows) {
    std::ostringstream os;
    os << "M,S_det,S_ito\n";
    for (const auto& r : rows)
        os << r.level << ',' << fmt17(r.stats.s_det) << ',' << fmt17(r.stats.s_ito) << '\n';
    return os.str();
}

std::string path_csv(const WienerPath& path) {
    std::ostringstream os;
    os << "k,m,increment\n";
    for (int k = 0; k < path.channels; ++k)
        for (int m = 0; m < path.finest_steps; ++m)
            os << k << ',' << m << ',' << fmt17(path.increments[k][m]) << '\n';
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << content;
    if (!os) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace sns
