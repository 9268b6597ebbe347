#pragma once

// FNV-1a over the exact bytes of doubles and strings, rendered as 16 hex
// digits. Used to tag artifacts with the grids they were computed on.

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <span>
#include <string>
#include <string_view>

namespace fockde {

class Fnv1a {
 public:
  Fnv1a& add(std::string_view s) {
    for (unsigned char c : s) mix(c);
    mix(0xff);
    return *this;
  }
  Fnv1a& add(double x) {
    unsigned char b[sizeof(double)];
    std::memcpy(b, &x, sizeof(double));
    for (unsigned char c : b) mix(c);
    return *this;
  }
  Fnv1a& add(std::span<const double> xs) {
    for (double x : xs) add(x);
    return *this;
  }
  std::uint64_t value() const { return h_; }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

 private:
  void mix(unsigned char c) {
    h_ ^= c;
    h_ *= 0x100000001b3ULL;
  }
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

}  // namespace fockde
