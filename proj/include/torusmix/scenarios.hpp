#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "torusmix/dynamics.hpp"

namespace torusmix {

// One initial-condition descriptor. Families and the parameters they read:
//   vorticity: rest | shear(amplitude, mode) | taylor_green(amplitude, mode)
//              | taylor_green_perturbed(amplitude, mode, perturbation, k_min, k_max)
//              | random_band(enstrophy, k_min, k_max)
//   scalar:    single_mode(amplitude, mode_x, mode_y) | checkerboard(amplitude, mode)
//              | random_band(enstrophy, k_min, k_max) | gaussian_blob(amplitude, width, x0, y0)
// Every family produces a zero-mean band-limited field with max wavenumber
// component <= n/4.
struct FieldSpec {
    std::string family = "rest";
    double amplitude = 1.0;
    int mode = 1;
    int mode_x = 1;
    int mode_y = 0;
    int k_min = 3;
    int k_max = 8;
    double enstrophy = 1.0;     // random_band: target 0.5*|w|_L2^2
    double perturbation = 0.0;  // taylor_green_perturbed: relative L2 size
    double width = 0.1;         // gaussian_blob: sigma
    double x0 = 0.5;
    double y0 = 0.5;
};

struct ScenarioSpec {
    std::string name;
    FieldSpec omega0;
    FieldSpec theta0;
    int n = 256;
    double t_end = 1.0;
    double cfl = 0.4;
    double sample_every = 0.02;
    std::uint64_t seed = 1;
};

// Side-channel facts about the construction (e.g. the spectral truncation
// error of a periodized blob, the realized |omega0|_Linf).
using BuildNotes = std::map<std::string, double>;

// Deterministic state from (families, parameters, seed); identical specs
// give bit-identical states. Throws std::invalid_argument for unknown
// families or band-limit violations.
FlowState build(const ScenarioSpec& spec, BuildNotes* notes = nullptr);

}  // namespace torusmix
