#include "core/rng.hpp"

namespace hawkes {

namespace {

// FNV-1a over the stream name, then splitmix64 finalization mixing in the
// root seed and index. Collisions between distinct (name, index) pairs are
// astronomically unlikely and harmless for this purpose.
uint64_t fnv1a(std::string_view s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

uint64_t substream_seed(uint64_t root, std::string_view name, uint64_t index) {
  uint64_t h = splitmix64(root ^ fnv1a(name));
  return splitmix64(h ^ splitmix64(index + 0x632be59bd9b4e019ull));
}

}  // namespace hawkes
