#include "wavebound/geometry.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace wavebound {

namespace {
// FFTW planning is not thread-safe
std::mutex fftw_mutex;
}

Vec periodic_derivative(const Vec& samples, double du) {
    const int n = static_cast<int>(samples.size());
    if (n < 4) throw SpecError("periodic derivative needs at least 4 samples");
    const int nc = n / 2 + 1;
    std::vector<double> in(samples.data(), samples.data() + n);
    std::vector<fftw_complex> freq(nc);
    std::vector<double> out(n);

    fftw_plan fwd, bwd;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        fwd = fftw_plan_dft_r2c_1d(n, in.data(), freq.data(), FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(n, freq.data(), out.data(), FFTW_ESTIMATE);
    }
    fftw_execute(fwd);

    const double period = n * du;
    for (int m = 0; m < nc; ++m) {
        const double kw = 2.0 * M_PI * m / period;
        const double re = freq[m][0];
        const double im = freq[m][1];
        // multiply by i*k; drop the unpaired Nyquist mode of even n
        if (2 * m == n) {
            freq[m][0] = 0.0;
            freq[m][1] = 0.0;
        } else {
            freq[m][0] = -kw * im;
            freq[m][1] = kw * re;
        }
    }
    fftw_execute(bwd);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }

    Vec d(n);
    for (int i = 0; i < n; ++i) d(i) = out[i] / n;
    return d;
}

Vec fd4_derivative(const Vec& f, double du, bool periodic) {
    const int n = static_cast<int>(f.size());
    if (n < 5) throw SpecError("fd4 derivative needs at least 5 samples");
    Vec d(n);
    auto at = [&](int i) {
        if (periodic) return f(((i % n) + n) % n);
        return f(std::clamp(i, 0, n - 1));
    };
    for (int i = 0; i < n; ++i) {
        if (periodic || (i >= 2 && i <= n - 3)) {
            d(i) = (-at(i + 2) + 8.0 * at(i + 1) - 8.0 * at(i - 1) + at(i - 2)) / (12.0 * du);
        } else if (i < 2) {
            d(i) = (-25.0 * f(i) + 48.0 * f(i + 1) - 36.0 * f(i + 2) + 16.0 * f(i + 3) -
                    3.0 * f(i + 4)) /
                   (12.0 * du);
        } else {
            d(i) = (25.0 * f(i) - 48.0 * f(i - 1) + 36.0 * f(i - 2) - 16.0 * f(i - 3) +
                    3.0 * f(i - 4)) /
                   (12.0 * du);
        }
    }
    return d;
}

CurveMetric induced_metric(const Vec& x, const Vec& y, double min_g) {
    if (x.size() != y.size()) throw SpecError("embedding sample arrays differ in length");
    const int n = static_cast<int>(x.size());
    if (n < 8) throw SpecError("induced metric needs at least 8 samples");

    CurveMetric m;
    m.du = 2.0 * M_PI / n;
    m.u = Vec::LinSpaced(n, 0.0, m.du * (n - 1));
    m.x = x;
    m.y = y;
    const Vec xd = periodic_derivative(x, m.du);
    const Vec yd = periodic_derivative(y, m.du);
    m.g = xd.cwiseProduct(xd) + yd.cwiseProduct(yd);
    if (m.g.minCoeff() < min_g)
        throw DegenerateCurve("curve parametrization degenerates (min g = " +
                              std::to_string(m.g.minCoeff()) + ")");
    m.sqrt_g = m.g.cwiseSqrt();
    return m;
}

Vec christoffel(const Vec& g, double du) {
    const Vec gd = periodic_derivative(g, du);
    return 0.5 * gd.cwiseQuotient(g);
}

Vec christoffel_open(const Vec& g, double du) {
    const Vec gd = fd4_derivative(g, du, false);
    return 0.5 * gd.cwiseQuotient(g);
}

Vec covariant_divergence(const Vec& v, const CurveMetric& metric) {
    if (v.size() != metric.g.size())
        throw SpecError("vector field and metric sample counts differ");
    const Vec flux = metric.sqrt_g.cwiseProduct(v);
    return periodic_derivative(flux, metric.du).cwiseQuotient(metric.sqrt_g);
}

double divergence_theorem_check(const Vec& v, const CurveMetric& metric) {
    const Vec div = covariant_divergence(v, metric);
    // rectangle rule is spectrally accurate on periodic data
    return std::abs((div.cwiseProduct(metric.sqrt_g)).sum() * metric.du);
}

}  // namespace wavebound
