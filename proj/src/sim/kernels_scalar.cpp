#include <algorithm>

#include "daqc/sim/kernels.hpp"

// Reference kernels. The expression trees here are the contract: the AVX2
// variants reproduce them operation for operation so results match exactly.

namespace daqc::sim {

namespace {

inline Complex phase_mul(Complex a, Complex p) {
    const double re = a.real() * p.real() - a.imag() * p.imag();
    const double im = a.real() * p.imag() + a.imag() * p.real();
    return {re, im};
}

void phase1_scalar(Complex* a, std::size_t dim, int q, Complex p0, Complex p1) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < dim; ++i) a[i] = phase_mul(a[i], (i & bit) ? p1 : p0);
}

void phase2_scalar(Complex* a, std::size_t dim, int qa, int qb, Complex pe, Complex pn) {
    const std::size_t ba = std::size_t{1} << qa;
    const std::size_t bb = std::size_t{1} << qb;
    for (std::size_t i = 0; i < dim; ++i) {
        const bool equal = ((i & ba) != 0) == ((i & bb) != 0);
        a[i] = phase_mul(a[i], equal ? pe : pn);
    }
}

inline void butterfly(Complex& u, Complex& v, double c, double s) {
    // u' = c u - i s v, v' = c v - i s u
    const double ur = c * u.real() + s * v.imag();
    const double ui = c * u.imag() - s * v.real();
    const double vr = c * v.real() + s * u.imag();
    const double vi = c * v.imag() - s * u.real();
    u = {ur, ui};
    v = {vr, vi};
}

void rot1_scalar(Complex* a, std::size_t dim, int q, double c, double s) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < dim; base += 2 * stride)
        for (std::size_t off = 0; off < stride; ++off)
            butterfly(a[base + off], a[base + off + stride], c, s);
}

void rot2_scalar(Complex* a, std::size_t dim, int qa, int qb, double c, double s) {
    const int hi = std::max(qa, qb);
    const std::size_t mask = (std::size_t{1} << qa) | (std::size_t{1} << qb);
    const std::size_t hstride = std::size_t{1} << hi;
    // Visiting only indices with the high bit clear covers each pair once.
    for (std::size_t base = 0; base < dim; base += 2 * hstride)
        for (std::size_t off = 0; off < hstride; ++off) {
            const std::size_t i = base + off;
            butterfly(a[i], a[i ^ mask], c, s);
        }
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{phase1_scalar, phase2_scalar, rot1_scalar, rot2_scalar};
    return table;
}

}  // namespace daqc::sim
