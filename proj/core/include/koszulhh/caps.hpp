#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace koszulhh {

/// Upper bounds on enumeration sizes. The default keeps desk-scale runs in
/// the range of seconds.
struct ResourceCaps {
  std::size_t max_sequences = 2'000'000;
};

/// Thrown when an enumeration would exceed ResourceCaps.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::size_t requested, std::size_t cap)
      : std::runtime_error(what + ": " + std::to_string(requested) + " exceeds cap " + std::to_string(cap)),
        requested_(requested),
        cap_(cap) {}

  std::size_t requested() const noexcept { return requested_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t requested_;
  std::size_t cap_;
};

inline void check_cap(const std::string& what, std::size_t requested, const ResourceCaps& caps) {
  if (requested > caps.max_sequences) throw CapExceeded(what, requested, caps.max_sequences);
}

}  // namespace koszulhh
