// Decide the criterion for a triple, evaluate V two ways and look for a
// relation with the explicit log/arccos form.

#include "hyperlog/hyperlog.hpp"

#include <iostream>

int main() {
    using namespace hyperlog;

    const ParameterTriple t(Rational(1, 6), Rational(5, 6), Rational(1, 4));
    const auto report = check_log_type(t);
    std::cout << t.to_string() << " N=" << report.modulus << " log-type=" << std::boolalpha << report.is_log_type
              << "\n";

    const Precision p{50};
    const auto v = eval_V(t, p, Backend::both);
    std::cout << "V = " << v.value.value.to_string(50) << "\n"
              << "backend agreement " << v.backend_agreement->to_string(3) << "\n";

    const auto basis = make_basis({"V(1/6,5/6,1/4)", "12^(3/4)/2*log((3^(5/4)-3^(3/4)+sqrt(2))/(3^(5/4)-3^(3/4)-sqrt(2)))",
                                   "12^(3/4)*arccos((3^(5/4)+3^(3/4))/(2*sqrt(5+3*sqrt(3))))"},
                                  p);
    std::cout << to_json(find_relation(basis, 1000.0)).dump(2) << "\n";
}
