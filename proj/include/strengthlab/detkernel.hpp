#pragma once

#include <map>

#include "strengthlab/multilinear.hpp"
#include "strengthlab/poly.hpp"

namespace strengthlab {

/// Matrix of polynomials in a shared base-variable set; a morphism of
/// trivial bundles over the base, evaluable at any base point.
struct MatrixFamily {
    FieldRef fld;
    uint32_t rows = 0;
    uint32_t cols = 0;
    uint32_t nvars = 0;
    std::vector<Poly> entries;  // row-major

    MatrixFamily(FieldRef f, uint32_t r, uint32_t c, uint32_t nv);

    const Poly& at(uint32_t r, uint32_t c) const { return entries[size_t(r) * cols + c]; }
    Poly& at(uint32_t r, uint32_t c) { return entries[size_t(r) * cols + c]; }
    Mat eval(const std::vector<FieldElem>& point) const;
    MatrixFamily embedded(const Embedding& emb) const;
};

/// The family w -> P_W(w): rows indexed by the pivot factor (the slot
/// quantified over), columns by the kernel-side factor, entries multilinear
/// in the remaining factors' coordinates. ker(P_W(w)) is the fiber of Z_P
/// over w.
MatrixFamily flatten_family(const MultilinearForm& P, uint32_t pivot, uint32_t kernel_factor);

/// Element of the k-th exterior power of an n-dimensional space, with the
/// basis k-vectors e_S indexed by ascending index subsets (stored as bit
/// masks).
struct ExteriorElement {
    FieldRef fld;
    uint32_t n = 0;
    uint32_t degree = 0;
    std::map<uint32_t, FieldElem> comps;  // bitmask (popcount == degree) -> coefficient

    ExteriorElement(FieldRef f, uint32_t n_, uint32_t k_) : fld(std::move(f)), n(n_), degree(k_) {}
    void add(uint32_t mask, FieldElem c);
    bool is_zero() const { return comps.empty(); }
};

/// Wedge of degree-1 vectors; coefficients are the maximal minors.
ExteriorElement wedge(FieldRef fld, const std::vector<std::vector<FieldElem>>& vectors);

/// Interior product with a constant covector.
ExteriorElement contract(const std::vector<FieldElem>& phi, const ExteriorElement& alpha);

struct KappaResult {
    std::vector<Poly> section;  // length = fam.cols
    bool minors_vanish = false;
};

/// Determinant of the submatrix on the given rows/columns, as a polynomial.
Poly family_minor(const MatrixFamily& fam, const std::vector<uint32_t>& rows,
                  const std::vector<uint32_t>& cols);

/// All (r+1)-minors vanish identically, or lie in the locus ideal up to the
/// minor degree when locus generators are declared.
bool minors_vanish(const MatrixFamily& fam, uint32_t r_plus_1,
                   const std::vector<Poly>& locus_gens = {});

/// iota_{f^v phi_1} ... iota_{f^v phi_r} alpha. Output lies in ker(fam)
/// whenever the (r+1)-minors vanish; the raw contraction is computed either
/// way and the flag reports the precondition.
KappaResult kappa(const MatrixFamily& fam, uint32_t r,
                  const std::vector<std::vector<FieldElem>>& phis, const ExteriorElement& alpha,
                  const std::vector<Poly>& locus_gens = {});

struct KernelSections {
    std::vector<std::vector<Poly>> sections;  // n - r of them, each length fam.cols
    uint32_t rank_at_x0 = 0;
};

/// Polynomial sections spanning ker fam(x0), built from the splitting of the
/// source into kernel and a rank-r complement at x0. Requires x0 to achieve
/// the maximal rank of the family on its (enumerable) base.
KernelSections kernel_sections(const MatrixFamily& fam, const std::vector<FieldElem>& x0,
                               const std::vector<Poly>& locus_gens = {});

}  // namespace strengthlab
