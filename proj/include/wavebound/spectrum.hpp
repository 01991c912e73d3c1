#pragma once

#include "wavebound/types.hpp"

namespace wavebound {

/// Magnitude spectrum of a real signal (Hann windowed), frequencies in cycles
/// per unit time.
struct Spectrum {
    std::vector<double> frequency;
    std::vector<double> magnitude;
};
Spectrum magnitude_spectrum(const std::vector<double>& signal, double dt);

/// Dominant spectral peak with parabolic sub-bin interpolation. Bins at or
/// below `min_frequency` are ignored (drops the DC/drift component).
double dominant_frequency(const std::vector<double>& signal, double dt,
                          double min_frequency = 0.0);

}  // namespace wavebound
