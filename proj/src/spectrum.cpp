#include "wavebound/spectrum.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace wavebound {

namespace {
std::mutex fftw_mutex;
}

Spectrum magnitude_spectrum(const std::vector<double>& signal, double dt) {
    const int n = static_cast<int>(signal.size());
    if (n < 16) throw SpecError("spectrum needs at least 16 samples");
    std::vector<double> in(n);
    double mean = 0.0;
    for (double v : signal) mean += v;
    mean /= n;
    for (int i = 0; i < n; ++i) {
        const double w = 0.5 * (1.0 - std::cos(2.0 * M_PI * i / (n - 1)));  // Hann
        in[i] = (signal[i] - mean) * w;
    }
    const int nc = n / 2 + 1;
    std::vector<fftw_complex> freq(nc);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        plan = fftw_plan_dft_r2c_1d(n, in.data(), freq.data(), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        fftw_destroy_plan(plan);
    }

    Spectrum s;
    s.frequency.resize(nc);
    s.magnitude.resize(nc);
    for (int m = 0; m < nc; ++m) {
        s.frequency[m] = m / (n * dt);
        s.magnitude[m] = std::hypot(freq[m][0], freq[m][1]);
    }
    return s;
}

double dominant_frequency(const std::vector<double>& signal, double dt, double min_frequency) {
    const Spectrum s = magnitude_spectrum(signal, dt);
    const int nc = static_cast<int>(s.frequency.size());
    int best = -1;
    for (int m = 1; m + 1 < nc; ++m) {
        if (s.frequency[m] <= min_frequency) continue;
        if (best < 0 || s.magnitude[m] > s.magnitude[best]) best = m;
    }
    if (best <= 0) throw ConvergenceFailure("no spectral peak above the frequency floor");

    // parabolic interpolation on log magnitude around the peak bin
    const double a = std::log(std::max(s.magnitude[best - 1], 1e-300));
    const double b = std::log(std::max(s.magnitude[best], 1e-300));
    const double c = std::log(std::max(s.magnitude[best + 1], 1e-300));
    const double denom = a - 2.0 * b + c;
    const double shift = (std::abs(denom) > 1e-15) ? 0.5 * (a - c) / denom : 0.0;
    const double bin = best + std::clamp(shift, -0.5, 0.5);
    return bin / (signal.size() * dt);
}

}  // namespace wavebound
