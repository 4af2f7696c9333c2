#include "hmix/group.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "hmix/io.hpp"

namespace hmix {

GroupElement::GroupElement(Index x_, Index y_, Index z_, Index n_) : n(n_) {
  if (n_ < 1) throw std::invalid_argument("modulus must be positive");
  x = mod(x_, n_);
  y = mod(y_, n_);
  z = mod(z_, n_);
}

std::size_t GroupElement::index() const {
  return static_cast<std::size_t>(x + n * (y + n * z));
}

GroupElement GroupElement::from_index(std::size_t idx, Index n) {
  const auto un = static_cast<std::size_t>(n);
  const auto x = static_cast<Index>(idx % un);
  const auto y = static_cast<Index>((idx / un) % un);
  const auto z = static_cast<Index>(idx / (un * un));
  return {x, y, z, n};
}

std::ostream& operator<<(std::ostream& os, const GroupElement& g) {
  return os << '(' << g.x << ',' << g.y << ',' << g.z << ") mod " << g.n;
}

GroupElement mul(const GroupElement& a, const GroupElement& b) {
  if (a.n != b.n) throw std::invalid_argument("mul: modulus mismatch");
  const Index n = a.n;
  // a.x, b.y < n <= 2^31 so the product fits in 64 bits.
  return {a.x + b.x, a.y + b.y, (a.z + b.z + (a.x * b.y) % n) % n, n};
}

GroupElement inv(const GroupElement& a) {
  return {-a.x, -a.y, -a.z + (a.x * a.y) % a.n, a.n};
}

// ---------------------------------------------------------------------------

WalkMeasure::WalkMeasure(Index n, std::vector<Atom> atoms) : n_(n), atoms_(std::move(atoms)) {
  if (n < 1) throw std::invalid_argument("WalkMeasure: modulus must be positive");
  double total = 0.0;
  for (const auto& atom : atoms_) {
    if (atom.element.n != n) throw std::invalid_argument("WalkMeasure: modulus mismatch");
    if (!(atom.weight >= 0.0)) throw std::invalid_argument("WalkMeasure: negative weight");
    total += atom.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("WalkMeasure: weights do not sum to 1");
}

WalkMeasure WalkMeasure::canonical(Index n) {
  if (n < 3) throw std::invalid_argument("canonical measure requires n >= 3");
  return WalkMeasure(n, {{{1, 0, 0, n}, 0.25}, {{-1, 0, 0, n}, 0.25}, {{0, 1, 0, n}, 0.25}, {{0, -1, 0, n}, 0.25}});
}

double WalkMeasure::weight(const GroupElement& g) const {
  double w = 0.0;
  for (const auto& atom : atoms_)
    if (atom.element == g) w += atom.weight;
  return w;
}

bool WalkMeasure::is_symmetric(double tol) const {
  return std::all_of(atoms_.begin(), atoms_.end(), [&](const Atom& a) {
    return std::abs(weight(a.element) - weight(inv(a.element))) <= tol;
  });
}

// ---------------------------------------------------------------------------

namespace {

std::size_t cube(Index n) {
  const auto un = static_cast<std::size_t>(n);
  return un * un * un;
}

}  // namespace

DistributionTable::DistributionTable(Index n) : n_(n) {
  if (n < 1) throw std::invalid_argument("DistributionTable: modulus must be positive");
  probs_.assign(cube(n), 0.0);
}

DistributionTable::DistributionTable(Index n, std::vector<double> probs) : n_(n), probs_(std::move(probs)) {
  if (n < 1) throw std::invalid_argument("DistributionTable: modulus must be positive");
  if (probs_.size() != cube(n)) throw std::invalid_argument("DistributionTable: size is not n^3");
}

DistributionTable DistributionTable::point_mass(const GroupElement& g) {
  DistributionTable t(g.n);
  t.probs_[g.index()] = 1.0;
  return t;
}

DistributionTable DistributionTable::uniform(Index n) {
  DistributionTable t(n);
  std::fill(t.probs_.begin(), t.probs_.end(), 1.0 / static_cast<double>(cube(n)));
  return t;
}

DistributionTable DistributionTable::from_measure(const WalkMeasure& q) {
  DistributionTable t(q.modulus());
  for (const auto& atom : q.atoms()) t.probs_[atom.element.index()] += atom.weight;
  return t;
}

double DistributionTable::at(const GroupElement& g) const {
  if (g.n != n_) throw std::invalid_argument("DistributionTable::at: modulus mismatch");
  return probs_[g.index()];
}

double DistributionTable::total_mass() const {
  double s = 0.0;
  for (double p : probs_) s += p;
  return s;
}

std::vector<double> DistributionTable::center_marginal() const {
  const auto un = static_cast<std::size_t>(n_);
  std::vector<double> out(un, 0.0);
  for (std::size_t z = 0; z < un; ++z)
    for (std::size_t i = 0; i < un * un; ++i) out[z] += probs_[z * un * un + i];
  return out;
}

std::vector<double> DistributionTable::x_marginal() const {
  const auto un = static_cast<std::size_t>(n_);
  std::vector<double> out(un, 0.0);
  for (std::size_t i = 0; i < probs_.size(); ++i) out[i % un] += probs_[i];
  return out;
}

// ---------------------------------------------------------------------------

DistributionTable convolve(const DistributionTable& p, const WalkMeasure& q) {
  const Index n = p.modulus();
  if (q.modulus() != n) throw std::invalid_argument("convolve: modulus mismatch");

  // g h^{-1} for h = (hx, hy, hz): (x - hx, y - hy, z - hz - (x - hx) * hy).
  struct Shift {
    Index hx, hy, hz;
    double w;
  };
  std::vector<Shift> shifts;
  shifts.reserve(q.atoms().size());
  for (const auto& atom : q.atoms())
    shifts.push_back({atom.element.x, atom.element.y, atom.element.z, atom.weight});

  DistributionTable out(n);
  const auto un = static_cast<std::size_t>(n);
  for (Index z = 0; z < n; ++z)
    for (Index y = 0; y < n; ++y)
      for (Index x = 0; x < n; ++x) {
        double acc = 0.0;
        for (const auto& s : shifts) {
          const Index sx = mod(x - s.hx, n);
          const Index sy = mod(y - s.hy, n);
          const Index sz = mod(z - s.hz - (sx * s.hy) % n, n);
          acc += s.w * p[static_cast<std::size_t>(sx) + un * (static_cast<std::size_t>(sy) + un * static_cast<std::size_t>(sz))];
        }
        out[static_cast<std::size_t>(x) + un * (static_cast<std::size_t>(y) + un * static_cast<std::size_t>(z))] = acc;
      }
  return out;
}

DistributionTable convolution_power(const WalkMeasure& q, int k) {
  if (k < 0) throw std::invalid_argument("convolution_power: k must be nonnegative");
  auto table = DistributionTable::point_mass(GroupElement::identity(q.modulus()));
  for (int i = 0; i < k; ++i) table = convolve(table, q);
  return table;
}

double tv_distance(const DistributionTable& p) {
  const double u = 1.0 / static_cast<double>(p.size());
  double s = 0.0;
  for (double v : p.values()) s += std::abs(v - u);
  return 0.5 * s;
}

// ---------------------------------------------------------------------------

void write_csv(std::ostream& os, const DistributionTable& p) {
  os << "x,y,z,prob\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto g = GroupElement::from_index(i, p.modulus());
    os << g.x << ',' << g.y << ',' << g.z << ',' << io::fmt_real(p[i]) << '\n';
  }
}

DistributionTable read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("x,y,z,prob", 0) != 0)
    throw std::invalid_argument("read_csv: missing header x,y,z,prob");
  std::vector<std::array<long long, 3>> coords;
  std::vector<double> probs;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    const auto fields = io::split_csv_line(line);
    if (fields.size() != 4) throw std::invalid_argument("read_csv: expected 4 fields");
    coords.push_back({io::parse_int(fields[0]), io::parse_int(fields[1]), io::parse_int(fields[2])});
    probs.push_back(io::parse_real(fields[3]));
  }
  const auto n = static_cast<Index>(std::llround(std::cbrt(static_cast<double>(probs.size()))));
  if (n < 1 || cube(n) != probs.size()) throw std::invalid_argument("read_csv: row count is not a cube");
  DistributionTable t(n);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const auto& c = coords[i];
    if (c[0] < 0 || c[1] < 0 || c[2] < 0 || c[0] >= n || c[1] >= n || c[2] >= n)
      throw std::invalid_argument("read_csv: coordinate out of range");
    t[GroupElement(c[0], c[1], c[2], n).index()] = probs[i];
  }
  return t;
}

namespace {

template <typename T>
void put_le(std::ostream& os, T v) {
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  os.write(bytes.data(), sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
  std::array<char, sizeof(T)> bytes;
  if (!is.read(bytes.data(), sizeof(T))) throw std::invalid_argument("read_binary: truncated stream");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T v;
  std::memcpy(&v, bytes.data(), sizeof(T));
  return v;
}

constexpr char kMagic[4] = {'H', 'S', 'B', '1'};

}  // namespace

void write_binary(std::ostream& os, const DistributionTable& p) {
  os.write(kMagic, 4);
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(p.modulus()));
  put_le<std::uint64_t>(os, static_cast<std::uint64_t>(p.size()));
  for (double v : p.values()) put_le<double>(os, v);
}

DistributionTable read_binary(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    throw std::invalid_argument("read_binary: bad magic");
  const auto n = static_cast<Index>(get_le<std::uint32_t>(is));
  const auto len = get_le<std::uint64_t>(is);
  if (n < 1 || len != cube(n)) throw std::invalid_argument("read_binary: length is not n^3");
  std::vector<double> probs(len);
  for (auto& v : probs) v = get_le<double>(is);
  return DistributionTable(n, std::move(probs));
}

}  // namespace hmix
