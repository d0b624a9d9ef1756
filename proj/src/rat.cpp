#include "homeolab/rat.hpp"

#include <ostream>

namespace homeolab {

namespace {
void require_nonzero_den(const mpz_class& den) {
    if (sgn(den) == 0) throw DomainError("rational with zero denominator");
}
}  // namespace

Rat::Rat(long num, long den) : v_() {
    require_nonzero_den(mpz_class(den));
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat::Rat(const mpz_class& num, const mpz_class& den) {
    require_nonzero_den(den);
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat::Rat(const mpq_class& q) : v_(q) {
    v_.canonicalize();
}

Rat Rat::from_string(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    std::string num = text, den = "1";
    if (auto slash = text.find('/'); slash != std::string::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
        if (num.empty() || den.empty() || den.find('/') != std::string::npos)
            throw ParseError("malformed rational literal '" + text + "'");
    }
    auto integer_like = [](const std::string& s) {
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    if (!integer_like(num) || !integer_like(den))
        throw ParseError("malformed rational literal '" + text + "'");
    mpz_class n(num), d(den);
    require_nonzero_den(d);
    return Rat(n, d);
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    v_ /= o.v_;
    return *this;
}

mpz_class Rat::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

Rat Rat::frac() const {
    return *this - Rat(floor(), 1);
}

std::string Rat::str() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.str();
}

Rat dyadic(std::uint64_t j, unsigned bits) {
    mpz_class num;
    mpz_import(num.get_mpz_t(), 1, 1, sizeof(j), 0, 0, &j);
    mpz_class den(1);
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
    return Rat(num, den);
}

}  // namespace homeolab
