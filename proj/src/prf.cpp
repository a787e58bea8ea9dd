#include "lsf/prf.hpp"

#include <sodium.h>

#include <array>

namespace lsf {
namespace {

void put_le(unsigned char* out, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) out[i] = static_cast<unsigned char>(x >> (8 * i));
}

// Second key half: fixed salt tied to kPrfVersion.
constexpr std::uint64_t kSalt = 0x6c73666a6f696e00ULL | kPrfVersion;

}  // namespace

std::uint64_t prf(std::uint64_t key, Domain domain, std::uint64_t a, std::uint64_t b,
                  std::uint64_t c) {
  static_assert(crypto_shorthash_KEYBYTES == 16 && crypto_shorthash_BYTES == 8);
  std::array<unsigned char, 16> k;
  put_le(k.data(), key);
  put_le(k.data() + 8, kSalt);
  std::array<unsigned char, 32> msg;
  put_le(msg.data(), static_cast<std::uint64_t>(domain));
  put_le(msg.data() + 8, a);
  put_le(msg.data() + 16, b);
  put_le(msg.data() + 24, c);
  std::array<unsigned char, 8> out;
  crypto_shorthash(out.data(), msg.data(), msg.size(), k.data());
  std::uint64_t h = 0;
  for (int i = 7; i >= 0; --i) h = (h << 8) | out[i];
  return h;
}

}  // namespace lsf
