#ifndef PRODFN_DIST_HPP
#define PRODFN_DIST_HPP

namespace prodfn::dist {

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Regularized incomplete beta function I_x(a,b).
double beta_inc(double a, double b, double x);

// Standard normal CDF and upper tail.
double normal_cdf(double z);
double normal_sf(double z);

// Upper-tail probabilities of the usual test distributions.
double chisq_sf(double x, double df);
double f_sf(double x, double df1, double df2);
double student_t_sf(double t, double df);        // P(T > t)
double student_t_two_sided(double t, double df); // P(|T| > |t|)

// Inverse CDF of Student's t (two-sided critical value helper).
double student_t_ppf(double p, double df);

}  // namespace prodfn::dist

#endif  // PRODFN_DIST_HPP
