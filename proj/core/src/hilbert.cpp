#include "qeraser/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qeraser {

namespace {

const char* path_name(Path p) {
  switch (p) {
    case Path::U: return "U";
    case Path::L: return "L";
    case Path::Du: return "Du";
    case Path::Dl: return "Dl";
    case Path::du1: return "du1";
    case Path::du2: return "du2";
    case Path::dl1: return "dl1";
    case Path::dl2: return "dl2";
  }
  return "?";
}

void require_same_basis(const Basis& a, const Basis& b, const char* what) {
  if (!(a == b)) throw std::invalid_argument(std::string(what) + ": basis mismatch");
}

void require_normalized(const StateVector& s) {
  if (std::abs(s.norm_squared() - 1.0) > kAnalyticTol)
    throw std::domain_error("measurement on a non-normalized state");
}

}  // namespace

std::string to_string(const Label& label) {
  std::string out;
  if (label.path) out += path_name(*label.path);
  if (label.pol) out += (*label.pol == Pol::H ? "H" : "V");
  return out.empty() ? "-" : out;
}

Basis::Basis(std::vector<Label> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw std::invalid_argument("empty basis");
  if (labels_.size() > kMaxDim) throw std::length_error("basis dimension exceeds 32");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!labels_[i].path && !labels_[i].pol) throw std::invalid_argument("label without role");
    for (std::size_t j = 0; j < i; ++j)
      if (labels_[i] == labels_[j]) throw std::invalid_argument("duplicate basis label");
  }
}

Basis Basis::polarization() { return Basis({{std::nullopt, Pol::H}, {std::nullopt, Pol::V}}); }

Basis Basis::path() { return Basis({{Path::U, std::nullopt}, {Path::L, std::nullopt}}); }

Basis Basis::path_polarization() { return tensor(path(), polarization()); }

Basis Basis::extended() {
  std::vector<Label> labels;
  for (Path p : {Path::U, Path::L, Path::Du, Path::Dl, Path::du1, Path::du2, Path::dl1, Path::dl2})
    for (Pol q : {Pol::H, Pol::V}) labels.push_back({p, q});
  return Basis(std::move(labels));
}

std::optional<std::size_t> Basis::index_of(const Label& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t Basis::require_index(const Label& label) const {
  auto i = index_of(label);
  if (!i) throw std::invalid_argument("label " + to_string(label) + " not in basis");
  return *i;
}

Basis tensor(const Basis& a, const Basis& b) {
  if (a.size() * b.size() > kMaxDim) throw std::length_error("tensor dimension exceeds 32");
  std::vector<Label> labels;
  labels.reserve(a.size() * b.size());
  for (const Label& x : a.labels()) {
    for (const Label& y : b.labels()) {
      if ((x.path && y.path) || (x.pol && y.pol))
        throw std::invalid_argument("tensor factors share a role");
      labels.push_back({x.path ? x.path : y.path, x.pol ? x.pol : y.pol});
    }
  }
  return Basis(std::move(labels));
}

StateVector::StateVector(Basis basis, Eigen::VectorXcd amplitudes)
    : basis_(std::move(basis)), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.size()) != basis_.size())
    throw std::invalid_argument("amplitude count does not match basis");
}

StateVector StateVector::basis_state(const Basis& basis, const Label& label) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  v(static_cast<Eigen::Index>(basis.require_index(label))) = 1.0;
  return {basis, v};
}

StateVector StateVector::from_terms(const Basis& basis,
                                    std::initializer_list<std::pair<Label, cplx>> terms) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  for (const auto& [label, c] : terms) v(static_cast<Eigen::Index>(basis.require_index(label))) += c;
  return {basis, v};
}

cplx StateVector::amplitude(const Label& label) const {
  return amps_(static_cast<Eigen::Index>(basis_.require_index(label)));
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm_squared() - 1.0) <= tol; }

StateVector StateVector::normalized() const {
  double n = amps_.norm();
  if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
  return {basis_, amps_ / n};
}

StateVector StateVector::operator+(const StateVector& other) const {
  require_same_basis(basis_, other.basis_, "state addition");
  return {basis_, amps_ + other.amps_};
}

StateVector StateVector::operator-(const StateVector& other) const {
  require_same_basis(basis_, other.basis_, "state subtraction");
  return {basis_, amps_ - other.amps_};
}

StateVector operator*(cplx c, const StateVector& s) { return {s.basis_, c * s.amps_}; }

cplx inner(const StateVector& bra, const StateVector& ket) {
  require_same_basis(bra.basis(), ket.basis(), "inner product");
  return bra.amplitudes().dot(ket.amplitudes());
}

bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol) {
  if (!(a.basis() == b.basis())) return false;
  double na = a.amplitudes().norm();
  double nb = b.amplitudes().norm();
  if (std::abs(na - nb) > tol) return false;
  if (na == 0.0) return true;
  return std::abs(std::abs(inner(a, b)) - na * nb) <= tol;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  Basis basis = tensor(a.basis(), b.basis());
  Eigen::VectorXcd v(static_cast<Eigen::Index>(basis.size()));
  const auto nb = static_cast<Eigen::Index>(b.dim());
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(a.dim()); ++i)
    v.segment(i * nb, nb) = a.amplitudes()(i) * b.amplitudes();
  return {basis, v};
}

LinearMap::LinearMap(Basis basis, Eigen::MatrixXcd matrix) : basis_(std::move(basis)), m_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(basis_.size());
  if (m_.rows() != n || m_.cols() != n) throw std::invalid_argument("matrix shape does not match basis");
}

LinearMap LinearMap::identity(const Basis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  return {basis, Eigen::MatrixXcd::Identity(n, n)};
}

LinearMap LinearMap::from_action(const Basis& basis,
                                 const std::function<StateVector(const Label&)>& image) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    StateVector col = image(basis.label(static_cast<std::size_t>(j)));
    require_same_basis(basis, col.basis(), "from_action image");
    m.col(j) = col.amplitudes();
  }
  return {basis, m};
}

StateVector LinearMap::apply(const StateVector& state) const {
  require_same_basis(basis_, state.basis(), "apply");
  return {basis_, m_ * state.amplitudes()};
}

LinearMap LinearMap::operator*(const LinearMap& rhs) const {
  require_same_basis(basis_, rhs.basis_, "compose");
  return {basis_, m_ * rhs.m_};
}

LinearMap LinearMap::adjoint() const { return {basis_, m_.adjoint()}; }

bool LinearMap::is_unitary(double tol) const {
  const auto n = m_.rows();
  return ((m_.adjoint() * m_) - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() <= tol;
}

LinearMap tensor(const LinearMap& a, const LinearMap& b) {
  Basis basis = tensor(a.basis(), b.basis());
  const auto na = a.matrix().rows();
  const auto nb = b.matrix().rows();
  Eigen::MatrixXcd m(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i)
    for (Eigen::Index j = 0; j < na; ++j) m.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
  return {basis, m};
}

LinearMap rotator(Rotation direction, double phi) {
  const double s = direction == Rotation::Left ? std::sin(phi) : -std::sin(phi);
  const double c = std::cos(phi);
  Eigen::MatrixXcd m(2, 2);
  m << c, -s, s, c;
  return {Basis::polarization(), m};
}

LinearMap beam_splitter(double theta) {
  Eigen::MatrixXcd bs(2, 2);
  bs << std::cos(theta), std::sin(theta), std::sin(theta), -std::cos(theta);
  return tensor(LinearMap(Basis::path(), bs), LinearMap::identity(Basis::polarization()));
}

LinearMap encoder(Party party, EncoderAngles angles) {
  const Rotation up = party == Party::Alice ? Rotation::Left : Rotation::Right;
  const Rotation down = party == Party::Alice ? Rotation::Right : Rotation::Left;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m.block(0, 0, 2, 2) = rotator(up, angles.upper).matrix();
  m.block(2, 2, 2, 2) = rotator(down, angles.lower).matrix();
  return {Basis::path_polarization(), m};
}

double born_probability(const StateVector& state, const StateVector& effect) {
  require_normalized(state);
  return std::norm(inner(effect, state));
}

double born_probability(const StateVector& state, const LinearMap& effect) {
  require_normalized(state);
  require_same_basis(state.basis(), effect.basis(), "born_probability");
  return inner(state, effect.apply(state)).real();
}

LinearMap path_projector(const Basis& basis, std::initializer_list<Path> modes) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Label& l = basis.label(static_cast<std::size_t>(i));
    if (l.path && std::find(modes.begin(), modes.end(), *l.path) != modes.end()) m(i, i) = 1.0;
  }
  return {basis, m};
}

DetectorProbabilities detect(const StateVector& state) {
  require_normalized(state);
  DetectorProbabilities p;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const Label& l = state.basis().label(i);
    if (!l.path) throw std::invalid_argument("detection needs path labels");
    const double w = std::norm(state.amplitudes()(static_cast<Eigen::Index>(i)));
    switch (*l.path) {
      case Path::U:
      case Path::du1:
      case Path::dl1: p.d1 += w; break;
      case Path::L:
      case Path::du2:
      case Path::dl2: p.d2 += w; break;
      case Path::Du:
      case Path::Dl:
        if (w > kAnalyticTol) throw std::domain_error("photon left in an unmeasured decohered mode");
        break;
    }
  }
  return p;
}

}  // namespace qeraser
