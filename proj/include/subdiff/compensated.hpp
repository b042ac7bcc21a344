#pragma once

#include <cmath>

namespace subdiff {

// Neumaier variant of Kahan summation. The alternating series in this
// library cancel by many orders of magnitude; naive accumulation is not
// good enough for the tolerances the tests demand.
template <class T = double>
struct compensated_sum {
    T sum{0};
    T comp{0};

    void add(T x) {
        T t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    T value() const { return sum + comp; }
};

} // namespace subdiff
