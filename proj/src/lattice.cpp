#include "lattice.hpp"

namespace onion::detail {

bool fits_machine(const Point& p) {
    for (const Scalar& c : p.coords()) {
        if (c > kMachineBound || c < -kMachineBound) return false;
    }
    return true;
}

bool fits_machine(const PointSet& s) {
    for (const Point& p : s) {
        if (!fits_machine(p)) return false;
    }
    return true;
}

}  // namespace onion::detail
