#ifndef KKM_ERRORS_HPP
#define KKM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kkm {

/// Shape or size mismatch between operands, or an empty operand where one
/// is not allowed.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation produced NaN or Inf, or received NaN where a total order
/// is required.
class NumericError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Cluster labels or counts that violate 0 <= label < k, 1 <= k <= n.
class LabelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace kkm

#endif  // KKM_ERRORS_HPP
