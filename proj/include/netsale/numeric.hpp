#ifndef NETSALE_NUMERIC_HPP
#define NETSALE_NUMERIC_HPP

#include <cmath>

namespace netsale {

// Neumaier's compensated accumulator. Cheap insurance where sums feed into
// tight tolerances or where repeated equal terms should round the same way
// as a single multiplication.
struct NeumaierSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            carry += (sum - t) + x;
        else
            carry += (x - t) + sum;
        sum = t;
    }

    double total() const { return sum + carry; }
};

} // namespace netsale

#endif
