#ifndef PCURV_OPIO_HPP
#define PCURV_OPIO_HPP

#include <string>

#include "pcurv/ore.hpp"

namespace pcurv {

// Operator text format: {"variable": "x", "coefficients": [[...], ...]}
// where coefficients[j][i] is the integer coefficient (a decimal string) of
// x^i inside the coefficient of d^j.
OperatorX parse_operator_json(const std::string& text);
OperatorX load_operator_file(const std::string& path);
std::string operator_to_json(const OperatorX& l);

}  // namespace pcurv

#endif
