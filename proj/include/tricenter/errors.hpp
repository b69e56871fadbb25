#ifndef TRICENTER_ERRORS_HPP
#define TRICENTER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tricenter {

/// Evaluation requested closer than the collision guard to a center.
class singularity_error : public std::runtime_error {
public:
    explicit singularity_error(const std::string& what) : std::runtime_error(what) {}
};

/// Integration drove the state into a center (step-size underflow).
class collision_error : public std::runtime_error {
public:
    collision_error(const std::string& what, double t)
        : std::runtime_error(what), time(t) {}
    double time;
};

/// Input outside the operation's domain (unbound state, |H| >= G, ...).
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// Evaluation at a chart singularity (antipodal point, e -> 0 in W1, ...).
class chart_singular_error : public std::runtime_error {
public:
    explicit chart_singular_error(const std::string& what) : std::runtime_error(what) {}
};

/// Iteration failed to converge or a step size underflowed.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tricenter

#endif
