#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace fbar {

/// Thickness-axis constants of one material. All SI; permittivity is absolute (F/m).
///
/// `mech_q` is the structural quality factor applied as a complex stiffness
/// c_D (1 + j/Q). Infinity means lossless.
struct MaterialProps {
  std::string name;
  double density = 0.0;  // kg/m^3
  double c33_e = 0.0;    // Pa, stiffness at constant field
  double e33 = 0.0;      // C/m^2, zero for non-piezoelectric materials
  double eps33_s = 0.0;  // F/m, clamped permittivity
  double mech_q = std::numeric_limits<double>::infinity();
  std::string source_note;

  bool lossless() const noexcept { return mech_q == std::numeric_limits<double>::infinity(); }
  bool operator==(const MaterialProps&) const = default;
};

/// c_D = c_E33 + e33^2 / eps_S33
double stiffened_stiffness(const MaterialProps& m);
/// c_D (1 + j/Q_m); purely real for lossless materials.
std::complex<double> lossy_stiffness(const MaterialProps& m);
/// sqrt(c_D / rho), lossless part only.
double longitudinal_velocity(const MaterialProps& m);
/// e33^2 / (eps_S33 c_D); exactly 0 when e33 == 0.
double intrinsic_kt2(const MaterialProps& m);

/// Empty when the record satisfies all invariants.
std::vector<std::string> validate_material(const MaterialProps& m);

struct Layer {
  MaterialProps material;
  double thickness = 0.0;  // m
};

enum class Boundary { traction_free };

/// Layers are ordered top to bottom. The piezo layer is driven between the
/// electrodes on its two faces.
struct Stack {
  std::vector<Layer> layers;
  std::size_t piezo_index = 0;
  double area = 0.0;  // m^2, electrode overlap
  Boundary boundary = Boundary::traction_free;

  const Layer& piezo() const { return layers.at(piezo_index); }
};

struct Diagnostic {
  enum class Severity { error, warning };
  Severity severity = Severity::error;
  std::string message;
};

/// Every violated stack invariant. A piezo layer with e33 = 0 is reported as a
/// warning: the stack is still a valid (purely dielectric) capacitor.
std::vector<Diagnostic> validate_stack(const Stack& s);
bool has_errors(const std::vector<Diagnostic>& diags);
/// Throws ValidationError listing every error-severity diagnostic.
void require_valid(const Stack& s);

/// Named collection of materials. Iteration order is by name.
class MaterialTable {
 public:
  MaterialTable() = default;

  /// Al, AlN, ScAlN30, Si, SiO2, Pt with literature source notes.
  static MaterialTable builtin();

  /// Inserts or replaces by name. Throws ValidationError on invalid records.
  void put(MaterialProps m);
  /// Throws ValidationError naming the known materials when absent.
  const MaterialProps& at(const std::string& name) const;
  bool contains(const std::string& name) const { return entries_.count(name) != 0; }
  std::vector<std::string> names() const;
  const std::map<std::string, MaterialProps>& entries() const noexcept { return entries_; }

  /// Entries of `overrides` replace same-named entries here; new names are added.
  void merge(const MaterialTable& overrides);

  bool operator==(const MaterialTable&) const = default;

 private:
  std::map<std::string, MaterialProps> entries_;
};

/// 37 nm Al / 85 nm Sc0.3Al0.7N / 37 nm Al, 7 um x 16 um electrode overlap.
Stack default_stack(const MaterialTable& table = MaterialTable::builtin());

}  // namespace fbar
