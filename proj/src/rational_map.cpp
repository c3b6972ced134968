#include "blaschke/rational_map.hpp"

namespace blaschke {

ExtendedComplex eval(const ParameterPair& p, ExtendedComplex z) {
    require_valid(p);
    return detail::MapEval(p)(z);
}

Complex eval_derivative(const ParameterPair& p, Complex z) {
    require_valid(p);
    if (z == Complex(0.0)) throw std::domain_error("blaschke: derivative undefined at z = 0");
    const Complex den = Complex(1.0) - std::conj(p.a) * z;
    if (den == Complex(0.0)) throw std::domain_error("blaschke: derivative undefined at the pole 1/conj(a)");
    const double aa = std::norm(p.a);
    return 3.0 * z * z * ((z - p.a) / den) + z * z * z * ((1.0 - aa) / (den * den)) -
           2.0 * p.lambda / (z * z * z);
}

Complex eval_second_derivative(const ParameterPair& p, Complex z) {
    require_valid(p);
    if (z == Complex(0.0)) throw std::domain_error("blaschke: derivative undefined at z = 0");
    const Complex den = Complex(1.0) - std::conj(p.a) * z;
    if (den == Complex(0.0)) throw std::domain_error("blaschke: derivative undefined at the pole 1/conj(a)");
    const double aa = std::norm(p.a);
    const Complex q = (z - p.a) / den;
    const Complex qp = (1.0 - aa) / (den * den);
    const Complex qpp = 2.0 * std::conj(p.a) * (1.0 - aa) / (den * den * den);
    return 6.0 * z * q + 6.0 * z * z * qp + z * z * z * qpp + 6.0 * p.lambda / (z * z * z * z);
}

ExtendedComplex eval_blaschke(Complex a, ExtendedComplex z) {
    ParameterPair p {a, Complex(0.0)};
    require_valid(p);
    return detail::MapEval(p)(z);
}

}  // namespace blaschke
