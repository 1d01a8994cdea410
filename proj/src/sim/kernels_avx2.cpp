// AVX2 kernel variants. One __m256d holds two complex amplitudes; statevector
// dimensions are powers of two, so every span processed here has even length
// and no scalar remainder is needed. Arithmetic mirrors kernels_scalar.cpp
// exactly (multiply then add, no FMA) so both backends agree bitwise.

#if defined(__AVX2__)

#include <immintrin.h>

#include <algorithm>

#include "daqc/sim/kernels.hpp"

namespace daqc::sim {

namespace {

inline double* flat(Complex* a) { return reinterpret_cast<double*>(a); }

// Phase vectors for a two-complex span: pa multiplies the even complex, pb
// the odd one. a * p = (ar pr - ai pi, ar pi + ai pr) becomes
// v * pr_vec + swap_within(v) * pi_vec with the sign folded into pi_vec.
inline __m256d phase_re(Complex pa, Complex pb) {
    return _mm256_setr_pd(pa.real(), pa.real(), pb.real(), pb.real());
}
inline __m256d phase_im(Complex pa, Complex pb) {
    return _mm256_setr_pd(-pa.imag(), pa.imag(), -pb.imag(), pb.imag());
}

inline void phase_span(double* d, std::size_t complexes, __m256d pr, __m256d pi) {
    for (std::size_t k = 0; k < 2 * complexes; k += 4) {
        const __m256d v = _mm256_loadu_pd(d + k);
        const __m256d swapped = _mm256_permute_pd(v, 0x5);
        _mm256_storeu_pd(d + k, _mm256_add_pd(_mm256_mul_pd(v, pr), _mm256_mul_pd(swapped, pi)));
    }
}

void phase1_avx2(Complex* a, std::size_t dim, int q, Complex p0, Complex p1) {
    double* d = flat(a);
    if (q == 0) {
        phase_span(d, dim, phase_re(p0, p1), phase_im(p0, p1));
        return;
    }
    const std::size_t run = std::size_t{1} << q;
    const __m256d pr[2] = {phase_re(p0, p0), phase_re(p1, p1)};
    const __m256d pi[2] = {phase_im(p0, p0), phase_im(p1, p1)};
    for (std::size_t base = 0; base < dim; base += run) {
        const int sel = (base >> q) & 1;
        phase_span(d + 2 * base, run, pr[sel], pi[sel]);
    }
}

void phase2_avx2(Complex* a, std::size_t dim, int qa, int qb, Complex pe, Complex pn) {
    double* d = flat(a);
    const int lo = std::min(qa, qb);
    const int hi = std::max(qa, qb);
    if (lo == 0) {
        // Within a two-complex span only bit 0 varies; the high bit of the
        // span base picks which of the two mixed patterns applies.
        const __m256d pr[2] = {phase_re(pe, pn), phase_re(pn, pe)};
        const __m256d pi[2] = {phase_im(pe, pn), phase_im(pn, pe)};
        for (std::size_t base = 0; base < dim; base += 2) {
            const int sel = (base >> hi) & 1;
            phase_span(d + 2 * base, 2, pr[sel], pi[sel]);
        }
        return;
    }
    const std::size_t run = std::size_t{1} << lo;
    const __m256d pr[2] = {phase_re(pe, pe), phase_re(pn, pn)};
    const __m256d pi[2] = {phase_im(pe, pe), phase_im(pn, pn)};
    for (std::size_t base = 0; base < dim; base += run) {
        const int sel = ((base >> lo) & 1) ^ ((base >> hi) & 1);
        phase_span(d + 2 * base, run, pr[sel], pi[sel]);
    }
}

// u' = c u + s * (v.imag, -v.real): multiply the re/im-swapped partner by
// (s, -s) and add.
inline __m256d rot_sign(double s) { return _mm256_setr_pd(s, -s, s, -s); }

void rot1_avx2(Complex* a, std::size_t dim, int q, double c, double s) {
    double* d = flat(a);
    const __m256d cv = _mm256_set1_pd(c);
    const __m256d sv = rot_sign(s);
    if (q == 0) {
        for (std::size_t k = 0; k < 2 * dim; k += 4) {
            const __m256d v = _mm256_loadu_pd(d + k);
            const __m256d partner = _mm256_permute_pd(_mm256_permute4x64_pd(v, 0x4E), 0x5);
            _mm256_storeu_pd(d + k,
                             _mm256_add_pd(_mm256_mul_pd(v, cv), _mm256_mul_pd(partner, sv)));
        }
        return;
    }
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < dim; base += 2 * stride)
        for (std::size_t off = 0; off < stride; off += 2) {
            double* pu = d + 2 * (base + off);
            double* pv = pu + 2 * stride;
            const __m256d u = _mm256_loadu_pd(pu);
            const __m256d v = _mm256_loadu_pd(pv);
            const __m256d su = _mm256_permute_pd(u, 0x5);
            const __m256d sw = _mm256_permute_pd(v, 0x5);
            _mm256_storeu_pd(pu, _mm256_add_pd(_mm256_mul_pd(u, cv), _mm256_mul_pd(sw, sv)));
            _mm256_storeu_pd(pv, _mm256_add_pd(_mm256_mul_pd(v, cv), _mm256_mul_pd(su, sv)));
        }
}

void rot2_avx2(Complex* a, std::size_t dim, int qa, int qb, double c, double s) {
    double* d = flat(a);
    const __m256d cv = _mm256_set1_pd(c);
    const __m256d sv = rot_sign(s);
    const int lo = std::min(qa, qb);
    const int hi = std::max(qa, qb);
    const std::size_t mask = (std::size_t{1} << qa) | (std::size_t{1} << qb);
    const std::size_t hstride = std::size_t{1} << hi;
    if (lo == 0) {
        // Pairs cross between complexes (i, i+1) and (j, j+1) with
        // j = i ^ 2^hi: i partners j+1 and i+1 partners j, so swap the
        // complex halves of the partner chunk, butterfly lane-aligned, and
        // swap back on store.
        for (std::size_t base = 0; base < dim; base += 2 * hstride)
            for (std::size_t off = 0; off < hstride; off += 2) {
                const std::size_t i = base + off;
                double* pa = d + 2 * i;
                double* pb = d + 2 * (i ^ hstride);
                const __m256d u = _mm256_loadu_pd(pa);
                const __m256d v = _mm256_permute4x64_pd(_mm256_loadu_pd(pb), 0x4E);
                const __m256d su = _mm256_permute_pd(u, 0x5);
                const __m256d sw = _mm256_permute_pd(v, 0x5);
                _mm256_storeu_pd(pa, _mm256_add_pd(_mm256_mul_pd(u, cv), _mm256_mul_pd(sw, sv)));
                const __m256d vn = _mm256_add_pd(_mm256_mul_pd(v, cv), _mm256_mul_pd(su, sv));
                _mm256_storeu_pd(pb, _mm256_permute4x64_pd(vn, 0x4E));
            }
        return;
    }
    for (std::size_t base = 0; base < dim; base += 2 * hstride)
        for (std::size_t off = 0; off < hstride; off += 2) {
            const std::size_t i = base + off;
            double* pu = d + 2 * i;
            double* pv = d + 2 * (i ^ mask);
            const __m256d u = _mm256_loadu_pd(pu);
            const __m256d v = _mm256_loadu_pd(pv);
            const __m256d su = _mm256_permute_pd(u, 0x5);
            const __m256d sw = _mm256_permute_pd(v, 0x5);
            _mm256_storeu_pd(pu, _mm256_add_pd(_mm256_mul_pd(u, cv), _mm256_mul_pd(sw, sv)));
            _mm256_storeu_pd(pv, _mm256_add_pd(_mm256_mul_pd(v, cv), _mm256_mul_pd(su, sv)));
        }
}

}  // namespace

const KernelTable& avx2_table() {
    static const KernelTable table{phase1_avx2, phase2_avx2, rot1_avx2, rot2_avx2};
    return table;
}

}  // namespace daqc::sim

#endif  // __AVX2__
