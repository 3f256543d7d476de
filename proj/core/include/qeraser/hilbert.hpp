/*
 * Labeled finite-dimensional Hilbert spaces for path/polarization photons.
 *
 * A Basis is an ordered list of labels; each label carries an optional path
 * mode and an optional polarization. The canonical two-photon-mode order is
 * (U,H), (U,V), (L,H), (L,V); decohered modes follow in the extended basis.
 *
 *   BS(θ):   U → cosθ U + sinθ L,   L → sinθ U − cosθ L
 *   S_L(φ):  H → cosφ H + sinφ V,   V → −sinφ H + cosφ V,   S_R(φ) = S_L(φ)†
 *   T_A = |U⟩⟨U| ⊗ S_L + |L⟩⟨L| ⊗ S_R,   T_B = |U⟩⟨U| ⊗ S_R + |L⟩⟨L| ⊗ S_L
 */
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qeraser {

using cplx = std::complex<double>;

inline constexpr double kAnalyticTol = 1e-12;
inline constexpr double kPipelineTol = 1e-9;
inline constexpr std::size_t kMaxDim = 32;
inline constexpr double kPi = std::numbers::pi;

inline constexpr double deg(double degrees) { return degrees * kPi / 180.0; }
inline constexpr double to_deg(double radians) { return radians * 180.0 / kPi; }

// Du/Dl are the decohered partners of U/L; du*/dl* are their BS2 outputs.
enum class Path : std::uint8_t { U, L, Du, Dl, du1, du2, dl1, dl2 };
enum class Pol : std::uint8_t { H, V };

struct Label {
  std::optional<Path> path;
  std::optional<Pol> pol;

  friend bool operator==(const Label&, const Label&) = default;
};

std::string to_string(const Label& label);

class Basis {
 public:
  Basis() = default;
  explicit Basis(std::vector<Label> labels);

  static Basis polarization();
  static Basis path();
  static Basis path_polarization();
  /// All eight path modes times H/V (16 states), ideal modes first.
  static Basis extended();

  std::size_t size() const { return labels_.size(); }
  const Label& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<Label>& labels() const { return labels_; }
  std::optional<std::size_t> index_of(const Label& label) const;
  std::size_t require_index(const Label& label) const;

  friend bool operator==(const Basis&, const Basis&) = default;

 private:
  std::vector<Label> labels_;
};

/// Product basis, first factor outer. Throws std::invalid_argument if both
/// factors carry the same role and std::length_error above kMaxDim.
Basis tensor(const Basis& a, const Basis& b);

class StateVector {
 public:
  StateVector(Basis basis, Eigen::VectorXcd amplitudes);

  static StateVector basis_state(const Basis& basis, const Label& label);
  static StateVector from_terms(const Basis& basis,
                                std::initializer_list<std::pair<Label, cplx>> terms);

  const Basis& basis() const { return basis_; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  cplx amplitude(const Label& label) const;
  std::size_t dim() const { return basis_.size(); }

  double norm_squared() const { return amps_.squaredNorm(); }
  bool is_normalized(double tol = kAnalyticTol) const;
  StateVector normalized() const;

  StateVector operator+(const StateVector& other) const;
  StateVector operator-(const StateVector& other) const;
  friend StateVector operator*(cplx c, const StateVector& s);

 private:
  Basis basis_;
  Eigen::VectorXcd amps_;
};

/// ⟨bra|ket⟩, antilinear in the first argument.
cplx inner(const StateVector& bra, const StateVector& ket);
bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol = kAnalyticTol);
StateVector tensor(const StateVector& a, const StateVector& b);

class LinearMap {
 public:
  LinearMap(Basis basis, Eigen::MatrixXcd matrix);

  static LinearMap identity(const Basis& basis);
  /// Column j is the image of basis label j.
  static LinearMap from_action(const Basis& basis,
                               const std::function<StateVector(const Label&)>& image);

  const Basis& basis() const { return basis_; }
  const Eigen::MatrixXcd& matrix() const { return m_; }

  StateVector apply(const StateVector& state) const;
  StateVector operator()(const StateVector& state) const { return apply(state); }
  /// (A * B)(ψ) = A(B(ψ)).
  LinearMap operator*(const LinearMap& rhs) const;
  LinearMap adjoint() const;
  bool is_unitary(double tol = kAnalyticTol) const;

 private:
  Basis basis_;
  Eigen::MatrixXcd m_;
};

LinearMap tensor(const LinearMap& a, const LinearMap& b);

enum class Rotation : std::uint8_t { Left, Right };
enum class Party : std::uint8_t { Alice, Bob };

/// Rotator on the polarization basis; Left rotates by +φ, Right by −φ.
LinearMap rotator(Rotation direction, double phi);

/// Beam splitter on path ⊗ polarization, identity on polarization.
LinearMap beam_splitter(double theta);

/// Upper/lower-arm rotation angles. Alice applies S_L(upper) and S_R(lower);
/// Bob applies S_R(upper) and S_L(lower).
struct EncoderAngles {
  double upper = kPi / 4;
  double lower = kPi / 4;
};

LinearMap encoder(Party party, EncoderAngles angles = {});

/// |⟨effect|state⟩|²; the effect vector may be subnormalized.
double born_probability(const StateVector& state, const StateVector& effect);
/// ⟨state|E|state⟩ for a Hermitian effect operator E.
double born_probability(const StateVector& state, const LinearMap& effect);

/// Projector onto every label whose path is in `modes`.
LinearMap path_projector(const Basis& basis, std::initializer_list<Path> modes);

struct DetectorProbabilities {
  double d1 = 0.0;
  double d2 = 0.0;
};

/// D1 collects U, du1, dl1 and D2 collects L, du2, dl2.
DetectorProbabilities detect(const StateVector& state);

}  // namespace qeraser
