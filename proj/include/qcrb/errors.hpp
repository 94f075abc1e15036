#pragma once

#include <stdexcept>
#include <string>

namespace qcrb {

// Cutoff rejected because the thermal tail weight exceeds the tolerance.
class CutoffTooSmall : public std::runtime_error {
public:
    CutoffTooSmall(double weight, double tolerance)
        : std::runtime_error("truncation weight " + std::to_string(weight) +
                             " exceeds tolerance " + std::to_string(tolerance)),
          truncation_weight(weight), tolerance(tolerance) {}
    double truncation_weight;
    double tolerance;
};

// The density matrix is rank deficient; the RLD does not exist.
class RankDeficient : public std::runtime_error {
public:
    explicit RankDeficient(const std::string& what) : std::runtime_error(what) {}
};

// The chemical-potential root left the physical branch 0 < mu < beta*omega.
// Must not happen for valid inputs; indicates an internal inconsistency.
class NonPhysicalBranch : public std::logic_error {
public:
    explicit NonPhysicalBranch(const std::string& what) : std::logic_error(what) {}
};

class InvalidRange : public std::invalid_argument {
public:
    explicit InvalidRange(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace qcrb
