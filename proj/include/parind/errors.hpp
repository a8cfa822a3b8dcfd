#pragma once

#include <stdexcept>
#include <string>

namespace parind {

/// Unsupported or malformed configuration (bad Cartan type, rank, subset).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Objects from different groups, algebras or catalogs were combined.
class IncompatibleError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An internal consistency check failed. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A computed object could not be matched with the expected classification.
class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PARIND_ASSERT(cond, msg)                                                          \
  do {                                                                                    \
    if (!(cond)) throw ::parind::InternalError(std::string("assertion failed: ") + (msg)); \
  } while (0)

}  // namespace parind
