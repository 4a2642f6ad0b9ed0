#pragma once

#include <string>

#include "bandlab/rng.hpp"

namespace bandlab {

enum class DistributionFamily { gaussian, rademacher, uniform, student_t };

DistributionFamily distribution_family_from_string(const std::string& name);
std::string to_string(DistributionFamily family);

// Law of a single standardized matrix entry: mean 0, variance 1,
// E|w|^4 = 3 + kappa4, E|w|^{4+eps} <= moment_bound. All shipped families
// are symmetric about 0.
class EntryDistribution {
  public:
    explicit EntryDistribution(DistributionFamily family, double nu = 0.0);

    static EntryDistribution gaussian() { return EntryDistribution(DistributionFamily::gaussian); }
    static EntryDistribution rademacher() { return EntryDistribution(DistributionFamily::rademacher); }
    static EntryDistribution uniform() { return EntryDistribution(DistributionFamily::uniform); }
    static EntryDistribution student_t(double nu) {
        return EntryDistribution(DistributionFamily::student_t, nu);
    }

    DistributionFamily family() const { return family_; }
    double nu() const { return nu_; }
    std::string name() const;

    double kappa4() const;        // E|w|^4 - 3
    double epsilon() const;       // the eps of the (4+eps)-th moment bound
    double moment_bound() const;  // C with E|w|^{4+eps} <= C
    bool symmetric() const { return true; }

    double sample(EntryStream& stream) const;

    // Density of the standardized law (gaussian, uniform, student_t).
    // Rademacher is atomic; density() throws for it.
    double density(double x) const;

    // E{ w 1_{|w| <= sqrt(b)} }. Analytically zero for symmetric families;
    // the quadrature path is kept and is exercised by tests.
    double truncated_mean(double b) const;
    double truncated_mean_quadrature(double b) const;

  private:
    DistributionFamily family_;
    double nu_;  // degrees of freedom, student_t only
};

// x 1_{|x| <= sqrt(b)} minus the truncated mean of the distribution.
double truncate_center(double x, double b, const EntryDistribution& dist);

}  // namespace bandlab
