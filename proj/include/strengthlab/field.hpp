#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace strengthlab {

/// One element of F_{p^e}, stored as the value sum_i c_i * p^i of its
/// little-endian residue digits c_0,...,c_{e-1}, each in [0,p).
/// Elements are plain values; all arithmetic goes through the owning Field.
struct FieldElem {
    uint64_t v = 0;

    friend bool operator==(FieldElem a, FieldElem b) { return a.v == b.v; }
    friend bool operator!=(FieldElem a, FieldElem b) { return a.v != b.v; }
    friend bool operator<(FieldElem a, FieldElem b) { return a.v < b.v; }
};

/// Which characteristic hypotheses hold for a field/degree pair.
/// Audits use these to skip inapplicable inequalities instead of
/// reporting false violations.
struct CharFlags {
    bool divides_d = false;
    bool divides_dminus1 = false;
    bool divides_2 = false;
};

bool is_prime(uint32_t n);

/// Exact arithmetic in F_p (e = 1) or F_{p^e} = F_p[t]/(modulus).
///
/// The modulus is a monic degree-e polynomial over F_p, given as e+1
/// little-endian coefficients and verified irreducible at construction
/// (root check for e <= 3, Rabin's Frobenius/gcd test above that).
/// For e = 1 the modulus is the placeholder t and arithmetic is mod p.
///
/// Immutable after construction; all operations are pure.
class Field {
  public:
    static Field prime(uint32_t p);
    static Field extension(uint32_t p, uint32_t e, std::vector<uint32_t> modulus);
    /// Deterministic choice: lexicographically smallest monic irreducible.
    static Field extension_auto(uint32_t p, uint32_t e);

    uint32_t p() const { return p_; }
    uint32_t ext_degree() const { return e_; }
    uint64_t size() const { return q_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    FieldElem zero() const { return {0}; }
    FieldElem one() const { return {1}; }
    /// Constant embedding of an integer (reduces mod p; handles negatives).
    FieldElem from_int(int64_t k) const;
    /// Element with the given little-endian residue digits (length <= e).
    FieldElem from_digits(const std::vector<uint32_t>& digits) const;
    /// The i-th element in the canonical enumeration, 0 <= i < q.
    FieldElem element(uint64_t index) const;
    std::vector<uint32_t> digits(FieldElem a) const;

    bool is_zero(FieldElem a) const { return a.v == 0; }
    FieldElem add(FieldElem a, FieldElem b) const;
    FieldElem sub(FieldElem a, FieldElem b) const;
    FieldElem neg(FieldElem a) const;
    FieldElem mul(FieldElem a, FieldElem b) const;
    /// Throws std::domain_error on zero input.
    FieldElem inv(FieldElem a) const;
    FieldElem pow(FieldElem a, uint64_t k) const;
    FieldElem frobenius(FieldElem a) const { return pow(a, p_); }

    /// Canonical text: comma-separated little-endian digits ("3" or "3,0,1").
    std::string elem_to_string(FieldElem a) const;
    FieldElem elem_from_string(const std::string& s) const;

    /// "GF(p)" or "GF(p^e; modulus=c0,c1,...,1)".
    std::string spec_string() const;
    static Field from_spec_string(const std::string& s);

    bool same_spec(const Field& other) const {
        return p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_;
    }

  private:
    Field(uint32_t p, uint32_t e, std::vector<uint32_t> modulus);
    void build_tables();

    FieldElem mul_generic(FieldElem a, FieldElem b) const;
    FieldElem add_generic(FieldElem a, FieldElem b) const;

    uint32_t p_ = 2;
    uint32_t e_ = 1;
    uint64_t q_ = 2;
    std::vector<uint32_t> modulus_;

    // Dense op tables for small fields; empty above kLutMax elements.
    static constexpr uint64_t kLutMax = 1024;
    std::vector<uint16_t> add_lut_;
    std::vector<uint16_t> mul_lut_;
    std::vector<uint16_t> inv_lut_;
};

using FieldRef = std::shared_ptr<const Field>;

FieldRef make_field(Field f);

/// d >= 2. Reports which of p | d, p | d-1, p = 2 hold.
CharFlags char_admissible(const Field& k, uint32_t d);

/// Embedding F_{p^e} -> F_{p^(e*k)} determined by sending the generator t of
/// the small field to a fixed root of its modulus in the big field.
class Embedding {
  public:
    Embedding(FieldRef from, FieldRef to);

    FieldElem map(FieldElem a) const;
    const Field& from() const { return *from_; }
    const Field& to() const { return *to_; }

  private:
    FieldRef from_;
    FieldRef to_;
    std::vector<FieldElem> gen_powers_;  // 1, r, r^2, ..., r^(e_from-1) in `to`
};

/// The extension chain F_q, F_{q^2}, ..., F_{q^E} over a base field F_q,
/// with the embedding of the base into every level computed once.
/// Point counts of one variety across the levels feed dimension estimation.
class FieldTower {
  public:
    FieldTower(FieldRef base, uint32_t levels);

    uint32_t levels() const { return static_cast<uint32_t>(fields_.size()); }
    const FieldRef& base() const { return fields_.front(); }
    const FieldRef& field(uint32_t level) const { return fields_.at(level - 1); }
    const Embedding& embedding(uint32_t level) const { return embeds_.at(level - 1); }

  private:
    std::vector<FieldRef> fields_;
    std::vector<Embedding> embeds_;
};

}  // namespace strengthlab
