#include "tsfe/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <mutex>

#include <nlohmann/json.hpp>

namespace tsfe {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// FFTW planning is not thread-safe; execution of a ready plan is.
std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

void SpaceTimeGrid::validate() const {
    if (d < 1 || d > 3) throw ConfigError("SpaceTimeGrid: d must be in {1,2,3}");
    if (n < 8 || !is_pow2(n))
        throw ConfigError("SpaceTimeGrid: n must be a power of two >= 8");
    if (!(L > 0.0)) throw ConfigError("SpaceTimeGrid: L must be > 0");
    if (n_time < 1) throw ConfigError("SpaceTimeGrid: n_time must be >= 1");
    if (!(T > t_start)) throw ConfigError("SpaceTimeGrid: need T > t_start");
}

size_t SpaceTimeGrid::points() const {
    size_t p = 1;
    for (int i = 0; i < d; ++i) p *= size_t(n);
    return p;
}

double SpaceTimeGrid::cell_volume() const {
    double v = 1.0;
    for (int i = 0; i < d; ++i) v *= dx();
    return v;
}

double SpaceTimeGrid::xi(int k) const {
    int kw = k < n / 2 ? k : k - n;
    return kPi * kw / L;
}

Field Field::zeros(const SpaceTimeGrid& g, FieldDomain dom) {
    g.validate();
    Field f;
    f.grid = g;
    f.domain = dom;
    size_t slices = dom == FieldDomain::space ? 1 : size_t(g.n_time) + 1;
    f.values.assign(slices * g.points(), {0.0, 0.0});
    return f;
}

void Field::check_finite() const {
    for (const auto& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw RangeError("Field: non-finite entry");
}

Field dft_space(const Field& f, int sign) {
    if (sign != -1 && sign != 1) throw DomainError("dft_space: sign must be +-1");
    const auto& g = f.grid;
    Field out = f;
    int dims[3] = {g.n, g.n, g.n};
    size_t np = g.points();
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        plan = fftw_plan_many_dft(
            g.d, dims, out.n_slices(),
            reinterpret_cast<fftw_complex*>(out.values.data()), nullptr, 1,
            int(np), reinterpret_cast<fftw_complex*>(out.values.data()), nullptr,
            1, int(np), sign == -1 ? FFTW_FORWARD : FFTW_BACKWARD,
            FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_destroy_plan(plan);
    }
    if (sign == 1) {
        double scale = 1.0 / double(np);
        for (auto& v : out.values) v *= scale;
    }
    return out;
}

Field apply_multiplier(
    const Field& f,
    const std::function<std::complex<double>(const std::array<double, 3>& xi,
                                             double xi2)>& m) {
    const auto& g = f.grid;
    Field hat = dft_space(f, -1);
    size_t np = g.points();
    // precompute the multiplier over the frequency lattice once
    std::vector<std::complex<double>> mult(np);
    std::array<double, 3> xi{0.0, 0.0, 0.0};
    for (size_t idx = 0; idx < np; ++idx) {
        size_t rem = idx;
        double xi2 = 0.0;
        for (int ax = g.d - 1; ax >= 0; --ax) {
            int k = int(rem % size_t(g.n));
            rem /= size_t(g.n);
            xi[ax] = g.xi(k);
            xi2 += xi[ax] * xi[ax];
        }
        mult[idx] = m(xi, xi2);
    }
    for (int s = 0; s < hat.n_slices(); ++s)
        for (size_t idx = 0; idx < np; ++idx) hat.at(s, idx) *= mult[idx];
    return dft_space(hat, 1);
}

Field apply_phi_delta(const BernsteinFunction& phi, const Field& f) {
    return apply_multiplier(f, [&](const std::array<double, 3>&, double xi2) {
        return std::complex<double>(xi2 == 0.0 ? 0.0 : -phi(xi2), 0.0);
    });
}

Field apply_bessel(const BernsteinFunction& phi, double s, const Field& f) {
    if (s == 0.0) return f;
    return apply_multiplier(f, [&](const std::array<double, 3>&, double xi2) {
        return std::complex<double>(std::pow(1.0 + phi(xi2), 0.5 * s), 0.0);
    });
}

Field caputo_l1(const Field& f, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("caputo_l1: alpha must be in (0,1)");
    if (f.domain != FieldDomain::spacetime)
        throw GridMismatch("caputo_l1: need a spacetime field");
    const auto& g = f.grid;
    const int nt = g.n_time;
    const double dt = g.dt();
    const double c0 = 1.0 / (std::tgamma(2.0 - alpha) * std::pow(dt, alpha));
    std::vector<double> b(nt);
    for (int j = 0; j < nt; ++j)
        b[j] = std::pow(j + 1.0, 1.0 - alpha) - std::pow(double(j), 1.0 - alpha);
    Field out = Field::zeros(g, FieldDomain::spacetime);
    size_t np = g.points();
    for (int nn = 1; nn <= nt; ++nn) {
        for (size_t x = 0; x < np; ++x) {
            std::complex<double> s = 0.0;
            for (int j = 1; j <= nn; ++j)
                s += b[nn - j] * (f.at(j, x) - f.at(j - 1, x));
            out.at(nn, x) = c0 * s;
        }
    }
    return out;
}

Field fractional_integral(const Field& f, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("fractional_integral: alpha must be in (0,1)");
    if (f.domain != FieldDomain::spacetime)
        throw GridMismatch("fractional_integral: need a spacetime field");
    const auto& g = f.grid;
    const int nt = g.n_time;
    const double dt = g.dt();
    const double c0 = std::pow(dt, alpha) / std::tgamma(alpha + 2.0);
    // product-integration weights, exact on piecewise-linear data
    auto p = [&](double m) { return std::pow(m, alpha + 1.0); };
    Field out = Field::zeros(g, FieldDomain::spacetime);
    size_t np = g.points();
    for (int nn = 1; nn <= nt; ++nn) {
        double a0 = p(nn - 1.0) - (nn - alpha - 1.0) * std::pow(double(nn), alpha);
        for (size_t x = 0; x < np; ++x) {
            std::complex<double> s = a0 * f.at(0, x) + f.at(nn, x);
            for (int j = 1; j < nn; ++j)
                s += (p(nn - j + 1.0) - 2.0 * p(double(nn - j)) + p(nn - j - 1.0)) *
                     f.at(j, x);
            out.at(nn, x) = c0 * s;
        }
    }
    return out;
}

void write_field(const std::string& path, const Field& f) {
    f.check_finite();
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("write_field: cannot open " + path);
    static_assert(sizeof(std::complex<double>) == 16);
    os.write(reinterpret_cast<const char*>(f.values.data()),
             std::streamsize(f.values.size() * sizeof(std::complex<double>)));
    nlohmann::json j{{"d", f.grid.d},
                     {"n", f.grid.n},
                     {"L", f.grid.L},
                     {"n_time", f.grid.n_time},
                     {"T", f.grid.T},
                     {"t_start", f.grid.t_start},
                     {"domain", f.domain == FieldDomain::space ? "space"
                                                               : "spacetime"},
                     {"layout", "complex128-interleaved-le"}};
    std::ofstream js(path + ".json");
    js << j.dump(2) << "\n";
}

Field read_field(const std::string& path) {
    std::ifstream js(path + ".json");
    if (!js) throw ConfigError("read_field: missing sidecar for " + path);
    nlohmann::json j = nlohmann::json::parse(js);
    SpaceTimeGrid g;
    g.d = j.at("d");
    g.n = j.at("n");
    g.L = j.at("L");
    g.n_time = j.at("n_time");
    g.T = j.at("T");
    g.t_start = j.value("t_start", 0.0);
    FieldDomain dom = j.at("domain") == "space" ? FieldDomain::space
                                                : FieldDomain::spacetime;
    Field f = Field::zeros(g, dom);
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("read_field: cannot open " + path);
    is.read(reinterpret_cast<char*>(f.values.data()),
            std::streamsize(f.values.size() * sizeof(std::complex<double>)));
    if (!is) throw ConfigError("read_field: short read on " + path);
    f.check_finite();
    return f;
}

void export_csv(const std::string& path, const Field& f, int time_index) {
    if (f.grid.d != 1) throw Unsupported("export_csv: d=1 slices only");
    if (time_index < 0 || time_index >= f.n_slices())
        throw RangeError("export_csv: time index out of range");
    std::ofstream os(path);
    if (!os) throw ConfigError("export_csv: cannot open " + path);
    os << "x,re,im\n";
    char buf[96];
    for (int i = 0; i < f.grid.n; ++i) {
        const auto& v = f.at(time_index, size_t(i));
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", f.grid.coord(i),
                      v.real(), v.imag());
        os << buf;
    }
}

}  // namespace tsfe
