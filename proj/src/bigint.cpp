#include "korlov/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace korlov {

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v > 0 ? 1 : -1;
    unsigned long long m = v > 0 ? (unsigned long long)v : ~(unsigned long long)v + 1ULL;
    while (m) {
        mag_.push_back((uint32_t)(m & 0xffffffffULL));
        m >>= 32;
    }
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    const auto &x = a.size() >= b.size() ? a : b, &y = a.size() >= b.size() ? b : a;
    std::vector<uint32_t> r(x.size() + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        uint64_t s = (uint64_t)x[i] + (i < y.size() ? y[i] : 0) + carry;
        r[i] = (uint32_t)s;
        carry = s >> 32;
    }
    r[x.size()] = (uint32_t)carry;
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

// requires |a| >= |b|
std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r(a.size(), 0);
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t s = (int64_t)a[i] - (i < b.size() ? b[i] : 0) - borrow;
        if (s < 0) {
            s += (int64_t)1 << 32;
            borrow = 1;
        } else
            borrow = 0;
        r[i] = (uint32_t)s;
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t s = (uint64_t)a[i] * b[j] + r[i + j] + carry;
            r[i + j] = (uint32_t)s;
            carry = s >> 32;
        }
        size_t k = i + b.size();
        while (carry) {
            uint64_t s = r[k] + carry;
            r[k] = (uint32_t)s;
            carry = s >> 32;
            ++k;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigInt r;
    if (a.sign_ == b.sign_) {
        r.sign_ = a.sign_;
        r.mag_ = BigInt::add_mag(a.mag_, b.mag_);
    } else {
        int c = BigInt::cmp_mag(a.mag_, b.mag_);
        if (c == 0) return BigInt();
        if (c > 0) {
            r.sign_ = a.sign_;
            r.mag_ = BigInt::sub_mag(a.mag_, b.mag_);
        } else {
            r.sign_ = b.sign_;
            r.mag_ = BigInt::sub_mag(b.mag_, a.mag_);
        }
    }
    r.trim();
    return r;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt r;
    if (a.sign_ == 0 || b.sign_ == 0) return r;
    r.sign_ = a.sign_ * b.sign_;
    r.mag_ = BigInt::mul_mag(a.mag_, b.mag_);
    r.trim();
    return r;
}

bool operator==(const BigInt& a, const BigInt& b) { return a.sign_ == b.sign_ && a.mag_ == b.mag_; }

bool operator<(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    int c = BigInt::cmp_mag(a.mag_, b.mag_);
    return a.sign_ >= 0 ? c < 0 : c > 0;
}

/* schoolbook long division on 32-bit limbs */
void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
    int c = cmp_mag(a.mag_, b.mag_);
    if (a.sign_ == 0 || c < 0) {
        q = BigInt();
        r = a;
        return;
    }
    // magnitude division, base 2^32, normalized shift
    std::vector<uint32_t> u = a.mag_, v = b.mag_;
    if (v.size() == 1) {
        uint64_t d = v[0], rem = 0;
        std::vector<uint32_t> qd(u.size());
        for (size_t i = u.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | u[i];
            qd[i] = (uint32_t)(cur / d);
            rem = cur % d;
        }
        q = BigInt();
        q.mag_ = qd;
        q.sign_ = 1;
        q.trim();
        r = BigInt();
        if (rem) {
            r.mag_ = {(uint32_t)rem};
            r.sign_ = 1;
        }
    } else {
        // Knuth algorithm D
        int shift = 0;
        uint32_t top = v.back();
        while (!(top & 0x80000000u)) {
            top <<= 1;
            ++shift;
        }
        auto shl = [&](const std::vector<uint32_t>& x) {
            if (shift == 0) return x;
            std::vector<uint32_t> y(x.size() + 1, 0);
            for (size_t i = 0; i < x.size(); ++i) {
                y[i] |= x[i] << shift;
                y[i + 1] = (uint32_t)((uint64_t)x[i] >> (32 - shift));
            }
            while (!y.empty() && y.back() == 0) y.pop_back();
            return y;
        };
        std::vector<uint32_t> un = shl(u), vn = shl(v);
        size_t n = vn.size(), m = un.size() - n;
        un.resize(un.size() + 1, 0);
        std::vector<uint32_t> qd(m + 1, 0);
        for (size_t j = m + 1; j-- > 0;) {
            uint64_t num = ((uint64_t)un[j + n] << 32) | un[j + n - 1];
            uint64_t qhat = num / vn[n - 1], rhat = num % vn[n - 1];
            while (qhat >= ((uint64_t)1 << 32) ||
                   (n >= 2 && qhat * vn[n - 2] > ((rhat << 32) | un[j + n - 2]))) {
                --qhat;
                rhat += vn[n - 1];
                if (rhat >= ((uint64_t)1 << 32)) break;
            }
            // multiply-subtract
            int64_t borrow = 0;
            uint64_t carry = 0;
            for (size_t i = 0; i < n; ++i) {
                uint64_t p = qhat * vn[i] + carry;
                carry = p >> 32;
                int64_t t = (int64_t)un[i + j] - (int64_t)(uint32_t)p - borrow;
                if (t < 0) {
                    t += (int64_t)1 << 32;
                    borrow = 1;
                } else
                    borrow = 0;
                un[i + j] = (uint32_t)t;
            }
            int64_t t = (int64_t)un[j + n] - (int64_t)carry - borrow;
            if (t < 0) {
                // add back
                t += (int64_t)1 << 32;
                --qhat;
                uint64_t c2 = 0;
                for (size_t i = 0; i < n; ++i) {
                    uint64_t s = (uint64_t)un[i + j] + vn[i] + c2;
                    un[i + j] = (uint32_t)s;
                    c2 = s >> 32;
                }
                t += (int64_t)c2;
            }
            un[j + n] = (uint32_t)t;
            qd[j] = (uint32_t)qhat;
        }
        q = BigInt();
        q.mag_ = qd;
        q.sign_ = 1;
        q.trim();
        // remainder = un >> shift
        std::vector<uint32_t> rm(un.begin(), un.begin() + n);
        if (shift) {
            for (size_t i = 0; i < rm.size(); ++i) {
                rm[i] >>= shift;
                if (i + 1 < n) rm[i] |= un[i + 1] << (32 - shift);
            }
        }
        while (!rm.empty() && rm.back() == 0) rm.pop_back();
        r = BigInt();
        r.mag_ = rm;
        r.sign_ = rm.empty() ? 0 : 1;
    }
    q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
    r.sign_ = r.mag_.empty() ? 0 : a.sign_;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.sign_ = a.mag_.empty() ? 0 : 1;
    b.sign_ = b.mag_.empty() ? 0 : 1;
    while (!b.is_zero()) {
        BigInt q, r;
        divmod(a, b, q, r);
        a = b;
        b = r;
    }
    return a;
}

bool BigInt::fits_int64() const {
    if (mag_.size() > 2) return false;
    if (mag_.size() < 2) return true;
    uint64_t m = ((uint64_t)mag_[1] << 32) | mag_[0];
    return sign_ > 0 ? m <= 0x7fffffffffffffffULL : m <= 0x8000000000000000ULL;
}

long long BigInt::to_int64() const {
    uint64_t m = 0;
    if (mag_.size() >= 1) m |= mag_[0];
    if (mag_.size() >= 2) m |= (uint64_t)mag_[1] << 32;
    return sign_ >= 0 ? (long long)m : -(long long)m;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    std::vector<uint32_t> u = mag_;
    std::string digits;
    while (!u.empty()) {
        uint64_t rem = 0;
        for (size_t i = u.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | u[i];
            u[i] = (uint32_t)(cur / 1000000000ULL);
            rem = cur % 1000000000ULL;
        }
        while (!u.empty() && u.back() == 0) u.pop_back();
        for (int k = 0; k < 9; ++k) {
            digits.push_back('0' + rem % 10);
            rem /= 10;
        }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    if (sign_ < 0) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

BigInt BigInt::from_string(const std::string& s) {
    BigInt r;
    size_t i = 0;
    int sg = 1;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        if (s[i] == '-') sg = -1;
        ++i;
    }
    if (i >= s.size()) throw std::invalid_argument("BigInt: empty literal");
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
        r = r * BigInt(10) + BigInt(s[i] - '0');
    }
    if (!r.is_zero()) r.sign_ = sg;
    return r;
}

/* ---- Rat ---- */

static long long gcd_ll(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rat::Rat(long long n, long long d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long long g = gcd_ll(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    n_ = n;
    d_ = d;
}

Rat Rat::make_big(BigInt n, BigInt d) {
    if (d.is_zero()) throw std::domain_error("Rat: zero denominator");
    if (d.sign() < 0) {
        n = -n;
        d = -d;
    }
    BigInt g = BigInt::gcd(n, d);
    if (!(g == BigInt(1)) && !g.is_zero()) {
        BigInt q, r;
        BigInt::divmod(n, g, q, r);
        n = q;
        BigInt::divmod(d, g, q, r);
        d = q;
    }
    if (n.fits_int64() && d.fits_int64()) {
        long long ni = n.to_int64(), di = d.to_int64();
        if (ni > -(1LL << 62) && ni < (1LL << 62) && di < (1LL << 62)) return Rat(ni, di);
    }
    Rat out;
    auto br = std::make_shared<BigRat>();
    br->n = n;
    br->d = d;
    out.big_ = br;
    out.n_ = 0;
    out.d_ = 1;
    return out;
}

Rat Rat::from_big(const BigInt& n, const BigInt& d) { return make_big(n, d); }

BigInt Rat::num_big() const { return big_ ? big_->n : BigInt(n_); }
BigInt Rat::den_big() const { return big_ ? big_->d : BigInt(d_); }

bool Rat::is_integer() const { return big_ ? big_->d == BigInt(1) : d_ == 1; }

static bool fits62(__int128 v) { return v > -((__int128)1 << 62) && v < ((__int128)1 << 62); }

static Rat from_i128(__int128 n, __int128 d) {
    // normalize via int128 gcd, spill to BigInt if needed
    __int128 a = n < 0 ? -n : n, b = d < 0 ? -d : d;
    while (b) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        n /= a;
        d /= a;
    }
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (fits62(n) && fits62(d)) return Rat((long long)n, (long long)d);
    auto to_big = [](__int128 v) {
        bool neg = v < 0;
        unsigned __int128 m = neg ? -(unsigned __int128)v : (unsigned __int128)v;
        BigInt r((long long)(m & 0x7fffffffffffffffULL));
        unsigned __int128 hi = m >> 63;
        if (hi) r = r + BigInt((long long)hi) * BigInt(1LL << 62) * BigInt(2);
        return neg ? -r : r;
    };
    return Rat::from_big(to_big(n), to_big(d));
}

Rat operator+(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_)
        return from_i128((__int128)a.n_ * b.d_ + (__int128)b.n_ * a.d_, (__int128)a.d_ * b.d_);
    return Rat::from_big(a.num_big() * b.den_big() + b.num_big() * a.den_big(), a.den_big() * b.den_big());
}

Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }

Rat Rat::operator-() const {
    if (!big_) {
        Rat r;
        r.n_ = -n_;
        r.d_ = d_;
        return r;
    }
    return make_big(-big_->n, big_->d);
}

Rat operator*(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_) return from_i128((__int128)a.n_ * b.n_, (__int128)a.d_ * b.d_);
    return Rat::from_big(a.num_big() * b.num_big(), a.den_big() * b.den_big());
}

Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw std::domain_error("Rat: division by zero");
    if (!a.big_ && !b.big_) return from_i128((__int128)a.n_ * b.d_, (__int128)a.d_ * b.n_);
    return Rat::from_big(a.num_big() * b.den_big(), a.den_big() * b.num_big());
}

Rat Rat::inv() const {
    if (is_zero()) throw std::domain_error("Rat: inverse of zero");
    if (!big_) return Rat(d_, n_);
    return make_big(big_->d, big_->n);
}

bool operator==(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
    return a.num_big() == b.num_big() && a.den_big() == b.den_big();
}

std::string Rat::to_string() const {
    if (!big_) {
        std::string s = std::to_string(n_);
        if (d_ != 1) s += "/" + std::to_string(d_);
        return s;
    }
    std::string s = big_->n.to_string();
    if (!(big_->d == BigInt(1))) s += "/" + big_->d.to_string();
    return s;
}

Rat Rat::from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return make_big(BigInt::from_string(s), BigInt(1));
    return make_big(BigInt::from_string(s.substr(0, slash)), BigInt::from_string(s.substr(slash + 1)));
}

}  // namespace korlov
