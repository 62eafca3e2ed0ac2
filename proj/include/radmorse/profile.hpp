#pragma once

namespace radmorse {

/// Hardy constant ratio N / (2 sqrt(N - 1)); exceeds 1 for N >= 3. Throws DomainError for N < 3.
double kappa(int dimension);

/// theta(s) = s exp(-1/s) for s > 0, zero otherwise. C-infinity, flat at the origin.
double transition_kernel(double s);

/// theta'(s) = exp(-1/s) (1 + 1/s) for s > 0, zero otherwise.
double transition_kernel_derivative(double s);

/// c0 = integral of exp(-theta(s)) over [0, inf), computed once and cached.
double normalization_constant();

/// Running integral G(x) = integral of exp(-theta(s)) over [0, x]; G(inf) = c0.
double transition_integral(double x);

/// Smallest and largest admissible construction radius.
inline constexpr double kMinRadius = 1e-3;
inline constexpr double kMaxRadius = 0.99;
inline constexpr int kMinDimension = 3;
inline constexpr int kMaxDimension = 9;

struct ProfileParams {
    int dimension = 3;
    double r0 = 0.1;
    double c0 = 0.0;
    /// Width of the transition layer in t = r^N: (kappa_N - 1) r0^N / c0.
    double lambda = 0.0;

    double kappa() const;
    /// r0^N, the end of the linear branch.
    double join() const;
};

/// Validates (N, r0) and derives c0 and lambda. Throws DomainError outside
/// 3 <= N <= 9, kMinRadius <= r0 <= kMaxRadius.
ProfileParams make_profile_params(int dimension, double r0);

/// The cutoff Psi: Psi(t) = t on (0, r0^N], then r0^N + int exp(-theta((tau - r0^N)/lambda)) dtau.
///
/// Psi is strictly increasing, concave and bounded by kappa_N r0^N. Immutable; all
/// evaluations are pure and thread-safe. Arguments must lie in (0, 1].
class Profile {
public:
    explicit Profile(const ProfileParams& params);
    Profile(int dimension, double r0) : Profile(make_profile_params(dimension, r0)) {}

    const ProfileParams& params() const { return params_; }
    int dimension() const { return params_.dimension; }
    double r0() const { return params_.r0; }
    double join() const { return join_; }
    /// kappa_N r0^N, the supremum of Psi.
    double ceiling() const { return ceiling_; }
    /// Past this t the transition integral has saturated to double precision.
    double saturation() const { return saturation_; }

    double psi(double t) const;
    double psi_prime(double t) const;
    double psi_second(double t) const;
    /// log Psi'(t) = -theta((t - r0^N)/lambda); finite everywhere, so strict monotonicity
    /// stays checkable where Psi' itself underflows.
    double log_psi_prime(double t) const;

private:
    double scaled(double t) const { return (t - join_) / params_.lambda; }

    ProfileParams params_;
    double join_;
    double ceiling_;
    double saturation_;
};

}  // namespace radmorse
