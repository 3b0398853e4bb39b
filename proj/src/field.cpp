#include "strengthlab/field.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace strengthlab {

namespace {

// Dense univariate polynomials over F_p, little-endian coefficients.
// Scratch machinery for irreducibility testing only.
using UPoly = std::vector<uint32_t>;

void utrim(UPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

UPoly umod(UPoly a, const UPoly& m, uint32_t p) {
    // m monic
    utrim(a);
    while (a.size() >= m.size()) {
        uint64_t lead = a.back();
        size_t shift = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i) {
            uint64_t sub = (lead * m[i]) % p;
            uint64_t cur = a[shift + i];
            a[shift + i] = static_cast<uint32_t>((cur + p - sub) % p);
        }
        utrim(a);
    }
    return a;
}

UPoly umulmod(const UPoly& a, const UPoly& b, const UPoly& m, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    UPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = static_cast<uint32_t>((c[i + j] + uint64_t(a[i]) * b[j]) % p);
    return umod(std::move(c), m, p);
}

UPoly upowmod(UPoly base, uint64_t k, const UPoly& m, uint32_t p) {
    UPoly r{1};
    base = umod(std::move(base), m, p);
    while (k) {
        if (k & 1) r = umulmod(r, base, m, p);
        base = umulmod(base, base, m, p);
        k >>= 1;
    }
    return r;
}

UPoly ugcd(UPoly a, UPoly b, uint32_t p) {
    utrim(a);
    utrim(b);
    while (!b.empty()) {
        // make b monic before reducing
        uint64_t lead = b.back();
        uint64_t inv = 1;
        {
            // Fermat inverse mod p
            uint64_t e = p - 2, x = lead, acc = 1;
            while (e) {
                if (e & 1) acc = acc * x % p;
                x = x * x % p;
                e >>= 1;
            }
            inv = acc;
        }
        UPoly bm = b;
        for (auto& c : bm) c = static_cast<uint32_t>(c * inv % p);
        a = umod(std::move(a), bm, p);
        std::swap(a, b);
    }
    return a;
}

// x^(p^k) mod m, by k successive Frobenius steps.
UPoly frobenius_power(uint32_t k, const UPoly& m, uint32_t p) {
    UPoly t{0, 1};
    for (uint32_t i = 0; i < k; ++i) t = upowmod(std::move(t), p, m, p);
    return t;
}

bool is_irreducible(const UPoly& m, uint32_t p) {
    uint32_t e = static_cast<uint32_t>(m.size()) - 1;
    if (e == 1) return true;
    if (m[0] == 0) return false;  // divisible by t
    if (e <= 3) {
        // degree 2 or 3: reducible iff it has a root
        for (uint32_t r = 0; r < p; ++r) {
            uint64_t acc = 0, pw = 1;
            for (uint32_t i = 0; i <= e; ++i) {
                acc = (acc + m[i] * pw) % p;
                pw = pw * r % p;
            }
            if (acc == 0) return false;
        }
        return true;
    }
    // Rabin: x^(p^e) == x mod m, and gcd(x^(p^(e/t)) - x, m) = 1 for prime t | e.
    UPoly xpe = frobenius_power(e, m, p);
    UPoly diff = xpe;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = static_cast<uint32_t>((diff[1] + p - 1) % p);
    utrim(diff);
    if (!diff.empty()) return false;
    for (uint32_t t = 2; t <= e; ++t) {
        if (e % t != 0) continue;
        bool prime_t = is_prime(t);
        if (!prime_t) continue;
        UPoly xk = frobenius_power(e / t, m, p);
        UPoly d = xk;
        if (d.size() < 2) d.resize(2, 0);
        d[1] = static_cast<uint32_t>((d[1] + p - 1) % p);
        utrim(d);
        UPoly g = ugcd(m, d, p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; uint64_t(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Field::Field(uint32_t p, uint32_t e, std::vector<uint32_t> modulus)
    : p_(p), e_(e), modulus_(std::move(modulus)) {
    if (!is_prime(p_)) throw std::invalid_argument("field characteristic must be prime");
    if (p_ >= (1u << 16)) throw std::invalid_argument("characteristic out of desk-scale range (p < 2^16)");
    if (e_ < 1) throw std::invalid_argument("extension degree must be >= 1");
    if (modulus_.size() != e_ + 1) throw std::invalid_argument("modulus must have degree e");
    for (auto& c : modulus_) c %= p_;
    if (modulus_.back() != 1) throw std::invalid_argument("modulus must be monic");
    if (e_ > 1 && !is_irreducible(modulus_, p_))
        throw std::invalid_argument("modulus is reducible over F_p");
    q_ = 1;
    for (uint32_t i = 0; i < e_; ++i) {
        q_ *= p_;
        if (q_ > (uint64_t(1) << 62)) throw std::invalid_argument("field too large");
    }
    build_tables();
}

Field Field::prime(uint32_t p) { return Field(p, 1, {0, 1}); }

Field Field::extension(uint32_t p, uint32_t e, std::vector<uint32_t> modulus) {
    return Field(p, e, std::move(modulus));
}

Field Field::extension_auto(uint32_t p, uint32_t e) {
    if (e == 1) return prime(p);
    // scan constant-first: modulus = c_0 + c_1 t + ... + t^e
    uint64_t total = 1;
    for (uint32_t i = 0; i < e; ++i) total *= p;
    for (uint64_t idx = 0; idx < total; ++idx) {
        std::vector<uint32_t> m(e + 1, 0);
        uint64_t t = idx;
        for (uint32_t i = 0; i < e; ++i) {
            m[i] = static_cast<uint32_t>(t % p);
            t /= p;
        }
        m[e] = 1;
        if (is_irreducible(m, p)) return Field(p, e, std::move(m));
    }
    throw std::logic_error("no irreducible modulus found");  // unreachable
}

void Field::build_tables() {
    if (q_ > kLutMax) {
        // inverse table still pays off for mid-size fields used in counting
        if (q_ <= (1u << 16)) {
            inv_lut_.assign(q_, 0);
            for (uint64_t a = 1; a < q_; ++a) {
                FieldElem x = pow({a}, q_ - 2);
                inv_lut_[a] = static_cast<uint16_t>(x.v);
            }
        }
        return;
    }
    add_lut_.assign(q_ * q_, 0);
    mul_lut_.assign(q_ * q_, 0);
    inv_lut_.assign(q_, 0);
    for (uint64_t a = 0; a < q_; ++a)
        for (uint64_t b = 0; b < q_; ++b) {
            add_lut_[a * q_ + b] = static_cast<uint16_t>(add_generic({a}, {b}).v);
            mul_lut_[a * q_ + b] = static_cast<uint16_t>(mul_generic({a}, {b}).v);
        }
    for (uint64_t a = 1; a < q_; ++a) {
        // q - 2 exponent via the freshly built mul table
        uint64_t acc = 1, base = a, k = q_ - 2;
        while (k) {
            if (k & 1) acc = mul_lut_[acc * q_ + base];
            base = mul_lut_[base * q_ + base];
            k >>= 1;
        }
        inv_lut_[a] = static_cast<uint16_t>(acc);
    }
}

FieldElem Field::from_int(int64_t k) const {
    int64_t r = k % int64_t(p_);
    if (r < 0) r += p_;
    return {static_cast<uint64_t>(r)};
}

FieldElem Field::from_digits(const std::vector<uint32_t>& digits) const {
    if (digits.size() > e_) throw std::invalid_argument("too many residue digits");
    uint64_t v = 0, pw = 1;
    for (uint32_t i = 0; i < e_; ++i) {
        uint32_t d = i < digits.size() ? digits[i] % p_ : 0;
        v += uint64_t(d) * pw;
        pw *= p_;
    }
    return {v};
}

FieldElem Field::element(uint64_t index) const {
    if (index >= q_) throw std::out_of_range("element index out of field");
    return {index};
}

std::vector<uint32_t> Field::digits(FieldElem a) const {
    std::vector<uint32_t> d(e_);
    uint64_t v = a.v;
    for (uint32_t i = 0; i < e_; ++i) {
        d[i] = static_cast<uint32_t>(v % p_);
        v /= p_;
    }
    return d;
}

FieldElem Field::add_generic(FieldElem a, FieldElem b) const {
    if (e_ == 1) {
        uint64_t s = a.v + b.v;
        if (s >= p_) s -= p_;
        return {s};
    }
    uint64_t va = a.v, vb = b.v, out = 0, pw = 1;
    for (uint32_t i = 0; i < e_; ++i) {
        uint64_t s = va % p_ + vb % p_;
        if (s >= p_) s -= p_;
        out += s * pw;
        pw *= p_;
        va /= p_;
        vb /= p_;
    }
    return {out};
}

FieldElem Field::add(FieldElem a, FieldElem b) const {
    if (!add_lut_.empty()) return {add_lut_[a.v * q_ + b.v]};
    return add_generic(a, b);
}

FieldElem Field::neg(FieldElem a) const {
    if (e_ == 1) return {a.v == 0 ? 0 : p_ - a.v};
    uint64_t va = a.v, out = 0, pw = 1;
    for (uint32_t i = 0; i < e_; ++i) {
        uint64_t d = va % p_;
        out += (d == 0 ? 0 : p_ - d) * pw;
        pw *= p_;
        va /= p_;
    }
    return {out};
}

FieldElem Field::sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

FieldElem Field::mul_generic(FieldElem a, FieldElem b) const {
    if (e_ == 1) return {a.v * b.v % p_};
    uint32_t da[8], db[8];
    uint64_t va = a.v, vb = b.v;
    for (uint32_t i = 0; i < e_; ++i) {
        da[i] = static_cast<uint32_t>(va % p_);
        va /= p_;
        db[i] = static_cast<uint32_t>(vb % p_);
        vb /= p_;
    }
    uint64_t conv[16] = {0};
    for (uint32_t i = 0; i < e_; ++i)
        for (uint32_t j = 0; j < e_; ++j) conv[i + j] = (conv[i + j] + uint64_t(da[i]) * db[j]) % p_;
    // reduce by the monic modulus
    for (int k = 2 * int(e_) - 2; k >= int(e_); --k) {
        uint64_t lead = conv[k];
        if (lead == 0) continue;
        conv[k] = 0;
        for (uint32_t i = 0; i < e_; ++i) {
            uint64_t sub = lead * modulus_[i] % p_;
            conv[k - e_ + i] = (conv[k - e_ + i] + p_ - sub) % p_;
        }
    }
    uint64_t out = 0, pw = 1;
    for (uint32_t i = 0; i < e_; ++i) {
        out += conv[i] * pw;
        pw *= p_;
    }
    return {out};
}

FieldElem Field::mul(FieldElem a, FieldElem b) const {
    if (!mul_lut_.empty()) return {mul_lut_[a.v * q_ + b.v]};
    return mul_generic(a, b);
}

FieldElem Field::inv(FieldElem a) const {
    if (a.v == 0) throw std::domain_error("division by zero in " + spec_string());
    if (!inv_lut_.empty()) return {inv_lut_[a.v]};
    return pow(a, q_ - 2);
}

FieldElem Field::pow(FieldElem a, uint64_t k) const {
    FieldElem r = one(), base = a;
    while (k) {
        if (k & 1) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}

std::string Field::elem_to_string(FieldElem a) const {
    auto d = digits(a);
    std::string s;
    for (uint32_t i = 0; i < e_; ++i) {
        if (i) s += ',';
        s += std::to_string(d[i]);
    }
    return s;
}

FieldElem Field::elem_from_string(const std::string& s) const {
    std::vector<uint32_t> d;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty()) throw std::invalid_argument("bad element literal: " + s);
        d.push_back(static_cast<uint32_t>(std::stoul(part)));
    }
    if (d.empty() || d.size() > e_) throw std::invalid_argument("bad element literal: " + s);
    return from_digits(d);
}

std::string Field::spec_string() const {
    if (e_ == 1) return "GF(" + std::to_string(p_) + ")";
    std::string s = "GF(" + std::to_string(p_) + "^" + std::to_string(e_) + "; modulus=";
    for (uint32_t i = 0; i <= e_; ++i) {
        if (i) s += ',';
        s += std::to_string(modulus_[i]);
    }
    s += ")";
    return s;
}

Field Field::from_spec_string(const std::string& s) {
    if (s.substr(0, 3) != "GF(" || s.back() != ')')
        throw std::invalid_argument("bad field spec: " + s);
    std::string body = s.substr(3, s.size() - 4);
    auto caret = body.find('^');
    if (caret == std::string::npos) {
        return prime(static_cast<uint32_t>(std::stoul(body)));
    }
    uint32_t p = static_cast<uint32_t>(std::stoul(body.substr(0, caret)));
    auto semi = body.find(';');
    if (semi == std::string::npos) throw std::invalid_argument("extension spec needs modulus: " + s);
    uint32_t e = static_cast<uint32_t>(std::stoul(body.substr(caret + 1, semi - caret - 1)));
    auto eq = body.find('=', semi);
    if (eq == std::string::npos) throw std::invalid_argument("bad field spec: " + s);
    std::vector<uint32_t> mod;
    std::stringstream ss(body.substr(eq + 1));
    std::string part;
    while (std::getline(ss, part, ',')) mod.push_back(static_cast<uint32_t>(std::stoul(part)));
    return extension(p, e, std::move(mod));
}

FieldRef make_field(Field f) { return std::make_shared<const Field>(std::move(f)); }

CharFlags char_admissible(const Field& k, uint32_t d) {
    if (d < 2) throw std::invalid_argument("char_admissible needs degree >= 2");
    CharFlags f;
    f.divides_d = (d % k.p() == 0);
    f.divides_dminus1 = ((d - 1) % k.p() == 0);
    f.divides_2 = (k.p() == 2);
    return f;
}

Embedding::Embedding(FieldRef from, FieldRef to) : from_(std::move(from)), to_(std::move(to)) {
    if (from_->p() != to_->p()) throw std::invalid_argument("embedding requires equal characteristic");
    if (to_->ext_degree() % from_->ext_degree() != 0)
        throw std::invalid_argument("no embedding: extension degrees incompatible");
    uint32_t ef = from_->ext_degree();
    gen_powers_.assign(ef, to_->zero());
    gen_powers_[0] = to_->one();
    if (ef == 1) return;
    // find the first root of the small modulus in the big field
    const auto& m = from_->modulus();
    for (uint64_t i = 0; i < to_->size(); ++i) {
        FieldElem z = to_->element(i);
        FieldElem acc = to_->zero(), pw = to_->one();
        for (uint32_t k = 0; k <= ef; ++k) {
            acc = to_->add(acc, to_->mul(to_->from_int(m[k]), pw));
            pw = to_->mul(pw, z);
        }
        if (to_->is_zero(acc)) {
            FieldElem cur = to_->one();
            for (uint32_t k = 0; k < ef; ++k) {
                gen_powers_[k] = cur;
                cur = to_->mul(cur, z);
            }
            return;
        }
    }
    throw std::logic_error("modulus has no root in extension");  // unreachable for e | E
}

FieldElem Embedding::map(FieldElem a) const {
    auto d = from_->digits(a);
    FieldElem acc = to_->zero();
    for (uint32_t i = 0; i < d.size(); ++i)
        acc = to_->add(acc, to_->mul(to_->from_int(d[i]), gen_powers_[i]));
    return acc;
}

FieldTower::FieldTower(FieldRef base, uint32_t levels) {
    if (levels < 1) throw std::invalid_argument("tower needs at least one level");
    fields_.push_back(base);
    embeds_.emplace_back(base, base);
    for (uint32_t k = 2; k <= levels; ++k) {
        FieldRef big = make_field(Field::extension_auto(base->p(), base->ext_degree() * k));
        fields_.push_back(big);
        embeds_.emplace_back(base, big);
    }
}

}  // namespace strengthlab
