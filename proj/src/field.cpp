#include "korlov/field.hpp"

namespace korlov {

static bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; (uint64_t)d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Field Field::prime(uint32_t p) {
    if (!is_prime_u32(p)) throw std::invalid_argument("field characteristic must be prime: " + std::to_string(p));
    return Field(Kind::Fp, p);
}

Field Field::parse(const std::string& tag) {
    if (tag == "Q" || tag == "q") return rationals();
    return prime((uint32_t)std::stoul(tag));
}

uint32_t Field::fp_inv(uint32_t a) const {
    if (a == 0) throw std::domain_error("F_p: inverse of zero");
    // extended euclid
    int64_t t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
        int64_t q = r / nr;
        int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += p_;
    return (uint32_t)t;
}

uint32_t Field::to_fp(const Rat& x) const {
    // x = n/d with gcd(n,d)=1; reduce n*d^{-1} mod p
    auto mod_big = [&](const BigInt& v) -> uint32_t {
        BigInt q, r;
        BigInt::divmod(v, BigInt((long long)p_), q, r);
        long long m = r.to_int64();
        if (m < 0) m += p_;
        return (uint32_t)m;
    };
    uint32_t n, d;
    if (x.is_small()) {
        long long nn = x.num_small() % (long long)p_;
        if (nn < 0) nn += p_;
        n = (uint32_t)nn;
        d = (uint32_t)(x.den_small() % (long long)p_);
    } else {
        n = mod_big(x.num_big());
        d = mod_big(x.den_big());
    }
    if (d == 0) throw std::domain_error("coefficient denominator divisible by field characteristic");
    return d == 1 ? n : fp_mul(n, fp_inv(d));
}

Rat Field::reduce(const Rat& x) const {
    if (kind_ == Kind::Q) return x;
    return Rat((long long)to_fp(x));
}

Rat Field::add(const Rat& a, const Rat& b) const {
    if (kind_ == Kind::Q) return a + b;
    return Rat((long long)fp_add(to_fp(a), to_fp(b)));
}
Rat Field::sub(const Rat& a, const Rat& b) const {
    if (kind_ == Kind::Q) return a - b;
    return Rat((long long)fp_sub(to_fp(a), to_fp(b)));
}
Rat Field::mul(const Rat& a, const Rat& b) const {
    if (kind_ == Kind::Q) return a * b;
    return Rat((long long)fp_mul(to_fp(a), to_fp(b)));
}
Rat Field::neg(const Rat& a) const {
    if (kind_ == Kind::Q) return -a;
    return Rat((long long)fp_neg(to_fp(a)));
}
Rat Field::inv(const Rat& a) const {
    if (kind_ == Kind::Q) return a.inv();
    return Rat((long long)fp_inv(to_fp(a)));
}

}  // namespace korlov
