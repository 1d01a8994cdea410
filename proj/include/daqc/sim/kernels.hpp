#pragma once

// Statevector gate kernels. Every gate the circuits use reduces to four
// primitives over the amplitude array (basis index bit j = qubit j):
//
//   phase1(q, p0, p1)        a_i *= (bit q of i ? p1 : p0)        RZ
//   phase2(qa, qb, pe, pn)   a_i *= (bits equal ? pe : pn)        RZZ
//   rot1(q, c, s)            on pairs i / i + 2^q:                RX
//                            u' = c u - i s v,  v' = c v - i s u
//   rot2(qa, qb, c, s)       the same butterfly on pairs that     RXX
//                            differ in both bits
//
// Two implementations exist: a scalar reference and an AVX2 variant
// (compiled only on x86, executed only after a cpuid check). Both spell out
// identical floating-point expression trees and the library builds with
// -ffp-contract=off, so their outputs agree bit for bit; the equivalence
// tests assert exact equality. The backend is picked at startup, can be
// forced with DAQC_SIMD=scalar|avx2, and statevector sizes are powers of
// two, so the vector loops need no remainder handling.

#include <complex>
#include <cstddef>

namespace daqc::sim {

using Complex = std::complex<double>;

struct KernelTable {
    void (*phase1)(Complex* a, std::size_t dim, int q, Complex p0, Complex p1);
    void (*phase2)(Complex* a, std::size_t dim, int qa, int qb, Complex pe, Complex pn);
    void (*rot1)(Complex* a, std::size_t dim, int q, double c, double s);
    void (*rot2)(Complex* a, std::size_t dim, int qa, int qb, double c, double s);
};

enum class Backend { Scalar, Avx2 };

bool backend_available(Backend b);
Backend active_backend();
void set_backend(Backend b);  // throws std::runtime_error if unavailable

const KernelTable& kernel_table(Backend b);  // direct access for equivalence tests
const KernelTable& kernels();                // the active table

}  // namespace daqc::sim
