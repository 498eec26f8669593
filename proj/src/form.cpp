#include "mgonal/form.hpp"

#include <sstream>
#include <stdexcept>

#include "mgonal/checked.hpp"
#include "mgonal/polygonal.hpp"

namespace mgonal {

MGonalForm::MGonalForm(std::int64_t m, std::vector<std::int64_t> coeffs)
    : m_(m), coeffs_(std::move(coeffs)), sum_(0) {
    if (m_ < 3) throw std::invalid_argument("form order must be >= 3");
    if (coeffs_.empty()) throw std::invalid_argument("form needs at least one coefficient");
    std::int64_t prev = 1;
    for (const std::int64_t a : coeffs_) {
        if (a < 1) throw std::invalid_argument("coefficients must be positive");
        if (a < prev)
            throw std::invalid_argument("coefficients must be nondecreasing (got " +
                                        coeff_list_str(coeffs_) + ")");
        prev = a;
        sum_ = checked_add(sum_, a);
    }
}

std::int64_t MGonalForm::evaluate(std::span<const std::int64_t> xs) const {
    if (xs.size() != coeffs_.size())
        throw std::invalid_argument("evaluate: assignment length != rank");
    std::int64_t total = 0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        total = checked_add(total, checked_mul(coeffs_[i], polygonal_number(m_, xs[i])));
    return total;
}

std::string MGonalForm::str() const {
    std::ostringstream os;
    os << "<" << coeff_list_str(coeffs_) << ">_" << m_;
    return os.str();
}

Representation Representation::checked(const MGonalForm& form, std::int64_t target,
                                       std::vector<std::int64_t> xs) {
    const std::int64_t got = form.evaluate(xs);
    if (got != target) {
        std::ostringstream os;
        os << "witness mismatch: " << form.str() << " evaluates to " << got << ", expected "
           << target;
        throw std::logic_error(os.str());
    }
    return Representation{std::move(xs)};
}

std::int64_t TargetClass::value() const { return checked_add(checked_mul(a, m - 2), b); }

std::string coeff_list_str(const std::vector<std::int64_t>& coeffs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (i) os << ",";
        os << coeffs[i];
    }
    return os.str();
}

}  // namespace mgonal
