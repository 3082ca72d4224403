#include "imlab/field_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include "imlab/errors.hpp"

namespace imlab::spectral {

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
void put(std::ostream& os, T value) {
  auto bits = std::bit_cast<std::array<char, sizeof(T)>>(value);
  if constexpr (std::endian::native == std::endian::big) std::reverse(bits.begin(), bits.end());
  os.write(bits.data(), bits.size());
}

template <class T>
T get(std::istream& is) {
  std::array<char, sizeof(T)> bits{};
  if (!is.read(bits.data(), bits.size())) throw IoError("field snapshot truncated");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bits.begin(), bits.end());
  return std::bit_cast<T>(bits);
}

}  // namespace

void write_field(std::ostream& os, const SpectralField& f, double t) {
  const Grid& g = f.grid();
  put<std::int64_t>(os, g.dim());
  put<std::int64_t>(os, g.n());
  put<double>(os, g.length());
  put<double>(os, t);
  for (const cplx& c : f.coeffs()) {
    put<double>(os, c.real());
    put<double>(os, c.imag());
  }
  if (!os) throw IoError("failed to write field snapshot");
}

std::pair<SpectralField, double> read_field(std::istream& is) {
  const auto dim = get<std::int64_t>(is);
  const auto n = get<std::int64_t>(is);
  const auto L = get<double>(is);
  const auto t = get<double>(is);
  if ((dim != 1 && dim != 3) || n < 4 || n > (1 << 12))
    throw IoError("field snapshot header is corrupt");
  Grid g(static_cast<int>(dim), static_cast<int>(n), L, true);
  std::vector<cplx> c(g.size());
  for (auto& z : c) {
    const double re = get<double>(is);
    const double im = get<double>(is);
    z = {re, im};
  }
  return {SpectralField(g, std::move(c)), t};
}

void write_state(std::ostream& os, const WaveState& w) {
  write_field(os, w.u, w.t);
  write_field(os, w.v, w.t);
}

WaveState read_state(std::istream& is) {
  auto [u, t] = read_field(is);
  auto [v, tv] = read_field(is);
  if (t != tv) throw IoError("state snapshot: u and v time stamps differ");
  return WaveState(std::move(u), std::move(v), t);
}

void save_state(const std::filesystem::path& path, const WaveState& w) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  write_state(os, w);
}

WaveState load_state(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  try {
    return read_state(is);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_spectrum_csv(std::ostream& os, const SpectralField& f) {
  const Grid& g = f.grid();
  std::map<long, double> shells;
  const auto c = f.coeffs();
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (!g.in_band(i)) continue;
    shells[std::lround(g.kmag(i) / g.fundamental())] += g.volume() * std::norm(c[i]);
  }
  os << "k_shell,shell_energy\n";
  char line[64];
  for (const auto& [shell, energy] : shells) {
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", shell * g.fundamental(), energy);
    os << line;
  }
}

}  // namespace imlab::spectral
