#ifndef TRICENTER_DOP853_HPP
#define TRICENTER_DOP853_HPP

#include <functional>
#include <span>
#include <vector>

namespace tricenter {

/// Adaptive eighth-order Dormand-Prince integrator (8th order with embedded
/// 5th/3rd order error estimates) with seventh-order dense output, after
/// Hairer, Norsett and Wanner's DOP853.
///
/// The right-hand side writes dy/dt into `dydt`. Sample times must be
/// increasing and lie in [t0, t_end]; the sink is called once per sample
/// with the dense-output state.
class Dop853 {
public:
    using Rhs = std::function<void(double t, const double* y, double* dydt)>;
    using Sink = std::function<void(double t, std::span<const double> y)>;

    struct Options {
        double rel_tol = 1e-12;
        double abs_tol = 1e-12;
        double initial_step = 0.0; // 0 = choose automatically
        long max_steps = 10'000'000;
    };

    Dop853(int dim, Rhs rhs) : Dop853(dim, std::move(rhs), Options{}) {}
    Dop853(int dim, Rhs rhs, Options opt);

    /// Throws numerical_error on step-size underflow (time() then holds the
    /// failure time) or when max_steps is exhausted.
    void integrate(double t0, std::span<const double> y0, double t_end,
                   std::span<const double> sample_times, const Sink& sink);

    long steps_taken() const { return n_steps_; }
    long steps_rejected() const { return n_rejected_; }

private:
    void take_stages(double t, double h);
    double error_norm(double h) const;
    void prepare_dense(double t, double h);
    void dense_eval(double t0, double h, double t, double* out) const;
    double initial_step_guess(double t0, double t_end) const;

    int n_;
    Rhs rhs_;
    Options opt_;
    long n_steps_ = 0, n_rejected_ = 0;
    // work arrays: current state/derivative, trial state, stages, dense coeffs
    std::vector<double> y_, f0_, y1_, f1_, yt_, bsum_;
    std::vector<double> k_[16];
    std::vector<double> rc_[8];
};

} // namespace tricenter

#endif
