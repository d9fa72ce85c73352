#pragma once
/* Arbitrary-precision integers and exact rationals.
 * BigInt: sign + little-endian base-2^32 magnitude.
 * Rat: normalized fraction with an int64 fast path; spills to BigInt on overflow.
 */
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace korlov {

class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);
    static BigInt from_string(const std::string& s);

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }
    bool fits_int64() const;
    long long to_int64() const;
    std::string to_string() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    BigInt operator-() const;
    // truncated division: a = q*b + r with |r| < |b| and sign(r) = sign(a)
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    static BigInt gcd(BigInt a, BigInt b);  // nonnegative

    friend bool operator==(const BigInt& a, const BigInt& b);
    friend bool operator<(const BigInt& a, const BigInt& b);

private:
    int sign_ = 0;
    std::vector<uint32_t> mag_;

    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    void trim();
};

/* Exact rational number. Always normalized: den > 0, gcd(num, den) = 1. */
class Rat {
public:
    Rat() = default;
    Rat(long long n) : n_(n) {}
    Rat(long long n, long long d);
    static Rat from_big(const BigInt& n, const BigInt& d);
    static Rat from_string(const std::string& s);  // "a" or "a/b"

    bool is_zero() const { return big_ ? big_->n.is_zero() : n_ == 0; }
    bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }
    bool is_integer() const;
    bool is_small() const { return big_ == nullptr; }
    long long num_small() const { return n_; }
    long long den_small() const { return d_; }
    BigInt num_big() const;
    BigInt den_big() const;

    friend Rat operator+(const Rat& a, const Rat& b);
    friend Rat operator-(const Rat& a, const Rat& b);
    friend Rat operator*(const Rat& a, const Rat& b);
    friend Rat operator/(const Rat& a, const Rat& b);
    Rat operator-() const;
    Rat inv() const;
    friend bool operator==(const Rat& a, const Rat& b);
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }

    std::string to_string() const;

private:
    struct BigRat {
        BigInt n, d;  // d > 0, reduced
    };
    long long n_ = 0, d_ = 1;
    std::shared_ptr<const BigRat> big_;

    static Rat make_big(BigInt n, BigInt d);
};

}  // namespace korlov
