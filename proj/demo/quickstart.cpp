// Minimal tour of the library: thresholds, an envelope at one cone angle,
// a volume bracket and a slope count.

#include <iostream>

#include "dehnbounds/curves.hpp"
#include "dehnbounds/cusp_slopes.hpp"

int main() {
    using namespace dehn;

    const double L = critical_normalized_length(Cusp::single);
    std::cout << "single-cusp threshold  " << L << '\n';
    std::cout << "multi-cusp threshold   " << critical_normalized_length(Cusp::multi) << '\n';

    const double L_hat = 8.0;
    const Bracket ell = core_length_bracket(two_pi, L_hat);
    std::cout << "L = 8, alpha = 2pi: tube radius >= " << tube_radius_lower(two_pi, L_hat) << ", core length in ["
              << ell.lo << ", " << ell.hi << "]\n";

    const VolumeChangeResult v = delta_v_bounds(ell.hi);
    std::cout << "volume drop for ell = " << ell.hi << ": [" << v.delta_v.lo << ", " << v.delta_v.hi << "]\n";

    const CuspShape hex = CuspShape::from_modulus(0.5, 0.8660254037844386);
    std::cout << "hexagonal torus: " << enumerate_short_slopes(hex, L).size() << " slopes shorter than " << L
              << " (bound " << exceptional_count_bound(Cusp::single) << ")\n";
}
