#ifndef PRODFN_MODEL_FORMS_HPP
#define PRODFN_MODEL_FORMS_HPP

#include <string>
#include <vector>

#include "prodfn/series.hpp"

namespace prodfn {

/// The estimable functional forms. The per-capita forms impose constant
/// returns to scale by construction.
enum class FunctionalForm {
    cd_unrestricted,
    cd_tinbergen,
    cd_restricted_percapita,
    cd_restricted_tinbergen_percapita,
    transcendental,
    debertin,
    translog
};

const char* to_string(FunctionalForm form);
FunctionalForm functional_form_from_string(const std::string& name);
std::vector<FunctionalForm> all_functional_forms();

struct ModelSpec {
    FunctionalForm form = FunctionalForm::cd_tinbergen;
    bool include_war_dummy = false;
    int ar_error_order = 0;  // 0 = plain OLS, 1 = AR(1) error correction
    int war_first_year = 1980;
    int war_last_year = 1988;

    void validate() const;
};

/// A compiled regression problem: named response, named regressor columns
/// (intercept always present and first), over an aligned year span.
struct DesignMatrix {
    std::string response_name;
    std::vector<double> response;
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
    int start_year = 0;

    std::size_t rows() const noexcept { return response.size(); }
    std::size_t k() const noexcept { return columns.size(); }
    bool has(const std::string& name) const;
    const std::vector<double>& col(const std::string& name) const;
    int end_year() const noexcept { return start_year + static_cast<int>(rows()) - 1; }
};

// Indicator series: 1 for calendar years [first_year, last_year], else 0.
AnnualSeries war_dummy(int span_start, int span_end, int first_year = 1980,
                       int last_year = 1988);

// Compiles a functional form over a dataset with columns Q, L, K (and T).
DesignMatrix build_design(const Dataset& d, const ModelSpec& spec);

}  // namespace prodfn

#endif  // PRODFN_MODEL_FORMS_HPP
