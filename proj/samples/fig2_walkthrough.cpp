// Walkthrough: load a parameter file, print the resonance transmissions,
// scan the phase theta = phi, and design an isolator for kappa1/kappa2 = 10.
//
//   fig2_walkthrough [params.json]

#include <cstdio>
#include <numbers>

#include "nonrecip/nonrecip.hpp"

int main(int argc, char** argv) {
    using namespace nonrecip;
    try {
        ModelParams p = argc > 1 ? model_params_from_json(load_json_file(argv[1])) : base_figure_params();

        const auto tp = transmission_pair(p, 0.0);
        const auto m = isolation_metrics(tp);
        std::printf("theta=%.4f phi=%.4f  T12=%.6f T21=%.6f  %s, %.2f dB\n", p.theta, p.phi, tp.T12,
                    tp.T21, std::string(to_string(m.direction)).c_str(), m.isolation_db);

        std::puts("\ntheta=phi scan at y=0");
        for (int k = 0; k < 8; ++k) {
            p.theta = p.phi = k * std::numbers::pi / 4.0;
            const auto t = transmission_pair(p, 0.0);
            std::printf("  %d*pi/4  T12=%.6f  T21=%.6f\n", k, t.T12, t.T21);
        }

        std::puts("\nisolator design, kappa1=10 kappa2=1 gamma=0.01 f=1 (kappa2 units)");
        const auto d = design_isolator({10.0, 1.0, 0.01, 1.0}, {RateReference::kappa2, 1.0});
        const auto& c = d.candidates[*d.chosen];
        std::printf("  J1=%.6g  J3=%.6g%+.6gi  J2=%.6g%+.6gi\n", d.J1, c.J3.real(), c.J3.imag(),
                    c.J2.value.real(), c.J2.value.imag());
        std::printf("  T12=%.3e  T21=%.3e at resonance\n", c.T12_at_resonance, c.T21_at_resonance);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
