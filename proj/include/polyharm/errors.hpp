#pragma once

#include <stdexcept>
#include <string>

namespace polyharm {

// Bad parameter or violated precondition (wrong interval, unsupported order, ...).
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Division by a quantity whose value slot is zero, or evaluation where a
// warping function vanishes.
struct singularity_error : domain_error {
  using domain_error::domain_error;
};

// A jet of insufficient order was supplied.
struct arity_error : domain_error {
  using domain_error::domain_error;
};

// A variation bump does not satisfy the boundary-vanishing requirements of
// the requested functional order.
struct admissibility_error : domain_error {
  using domain_error::domain_error;
};

// Requested a functional variant outside its defined range.
struct unsupported_error : domain_error {
  using domain_error::domain_error;
};

// A numerical routine could not reach the requested tolerance; carries the
// estimate it did achieve.
class accuracy_error : public std::runtime_error {
 public:
  accuracy_error(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

}  // namespace polyharm
