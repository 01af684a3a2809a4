#ifndef ND_TYPES_HPP
#define ND_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace nd {

using cplx = std::complex<double>;

// Error hierarchy.  Every failure mode in the numeric core throws a subclass of
// nd::error; the CLI maps these onto process exit codes.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

struct non_convergent : error { using error::error; };
struct invalid_alpha : error { using error::error; };
struct invalid_b : error { using error::error; };
struct divergent_tail : error { using error::error; };
struct precondition_violated : error { using error::error; };

struct quadrature_failed : error { using error::error; };
struct integrand_diverged : error { using error::error; };
struct indeterminate : error { using error::error; };
struct ill_conditioned : error { using error::error; };

struct pole_at_minus_three : error { using error::error; };
struct multi_term_input : error { using error::error; };
struct pivot_out_of_range : error { using error::error; };
struct unsolvable_angular : error { using error::error; };
struct no_bracket : error { using error::error; };
struct non_monotone : error { using error::error; };

struct not_heun_reducible : error { using error::error; };
struct reduction_failed : error { using error::error; };
struct none_found : error { using error::error; };
struct unsupported_family : error { using error::error; };

struct grid_too_coarse : error { using error::error; };
struct match_unstable : error { using error::error; };
struct no_allowed_region : error { using error::error; };
struct turning_point_not_bracketed : error { using error::error; };

// Kahan-compensated accumulator for complex sums; the three-term recurrences
// feeding these sums are mildly unstable for large parameters, so we keep the
// rounding floor as low as double precision allows.
class kahan_sum {
  public:
    void add(const cplx& term) {
        const cplx y = term - comp_;
        const cplx t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    [[nodiscard]] cplx value() const { return sum_; }

  private:
    cplx sum_{0.0, 0.0};
    cplx comp_{0.0, 0.0};
};

}  // namespace nd

#endif
