#include "reviewkit/util/rational.hpp"

namespace reviewkit {

std::string Rational::to_decimal(int places) const {
    int64_t n = num_;
    bool neg = n < 0;
    if (neg) n = -n;

    int64_t whole = n / den_;
    int64_t rem = n % den_;
    std::string frac;
    frac.reserve(places);
    for (int i = 0; i < places; ++i) {
        rem *= 10;
        frac.push_back(static_cast<char>('0' + rem / den_));
        rem %= den_;
    }
    // Round half away from zero on the next digit.
    rem *= 10;
    if (rem / den_ >= 5) {
        int i = places - 1;
        for (; i >= 0; --i) {
            if (frac[i] != '9') { ++frac[i]; break; }
            frac[i] = '0';
        }
        if (i < 0) ++whole;
    }

    std::string out = (neg && (whole != 0 || frac.find_first_not_of('0') != std::string::npos))
                          ? "-" : "";
    out += std::to_string(whole);
    if (places > 0) {
        out.push_back('.');
        out += frac;
    }
    return out;
}

} // namespace reviewkit
