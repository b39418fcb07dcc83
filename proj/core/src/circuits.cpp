#include "dissim/circuits.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace dissim {

namespace {

int bit_of(int index, int qubit, int width) { return (index >> (width - 1 - qubit)) & 1; }
int flip_bit(int index, int qubit, int width) { return index ^ (1 << (width - 1 - qubit)); }

void append_cry_expanded(std::vector<Gate>& gates, int control, int target, double angle) {
  gates.push_back(Gate::ry(target, angle / 2.0));
  gates.push_back(Gate::cnot(control, target));
  gates.push_back(Gate::ry(target, -angle / 2.0));
  gates.push_back(Gate::cnot(control, target));
}

// Doubly controlled RY on `target`, both controls required high.
void append_ccry(std::vector<Gate>& gates, int c1, int c2, int target, double angle,
                 bool expand_cry) {
  auto cry = [&](int c, int t, double a) {
    if (expand_cry)
      append_cry_expanded(gates, c, t, a);
    else
      gates.push_back(Gate::cry(c, t, a));
  };
  cry(c2, target, angle / 2.0);
  gates.push_back(Gate::cnot(c1, c2));
  cry(c2, target, -angle / 2.0);
  gates.push_back(Gate::cnot(c1, c2));
  cry(c1, target, angle / 2.0);
}

}  // namespace

std::vector<int> Circuit::ancillas() const {
  std::vector<int> out;
  for (int q = 0; q < width; ++q)
    if (std::find(system.begin(), system.end(), q) == system.end()) out.push_back(q);
  return out;
}

void Circuit::validate() const {
  require(width >= 1 && width <= 10, "circuit width must be in [1,10]");
  require(std::is_sorted(system.begin(), system.end()), "system qubits must be ascending");
  for (int q : system) require(q >= 0 && q < width, "system qubit out of range");
  for (const Gate& g : gates) {
    require(g.target >= 0 && g.target < width, "gate target out of range");
    if (g.kind == GateKind::kCnot || g.kind == GateKind::kCry) {
      require(g.control >= 0 && g.control < width, "gate control out of range");
      require(g.control != g.target, "control and target must differ");
    }
  }
}

cmat gate_unitary(const Gate& g, int width) {
  const int dim = 1 << width;
  cmat u = cmat::Zero(dim, dim);
  switch (g.kind) {
    case GateKind::kX:
      for (int i = 0; i < dim; ++i) u(flip_bit(i, g.target, width), i) = 1.0;
      break;
    case GateKind::kCnot:
      for (int i = 0; i < dim; ++i)
        u(bit_of(i, g.control, width) ? flip_bit(i, g.target, width) : i, i) = 1.0;
      break;
    case GateKind::kRz: {
      const complexd lo = std::exp(complexd(0.0, -g.angle / 2.0));
      const complexd hi = std::exp(complexd(0.0, g.angle / 2.0));
      for (int i = 0; i < dim; ++i) u(i, i) = bit_of(i, g.target, width) ? hi : lo;
      break;
    }
    case GateKind::kRy:
    case GateKind::kCry: {
      const double c = std::cos(g.angle / 2.0);
      const double s = std::sin(g.angle / 2.0);
      for (int i = 0; i < dim; ++i) {
        if (g.kind == GateKind::kCry && bit_of(i, g.control, width) == 0) {
          u(i, i) = 1.0;
          continue;
        }
        if (bit_of(i, g.target, width) == 0) {
          const int j = flip_bit(i, g.target, width);
          u(i, i) = c;
          u(j, i) = s;
          u(i, j) = -s;
          u(j, j) = c;
        }
      }
      break;
    }
    case GateKind::kReset:
      throw validation_error("reset has no unitary representation");
  }
  return u;
}

cmat circuit_unitary(const Circuit& c) {
  c.validate();
  const int dim = 1 << c.width;
  cmat u = cmat::Identity(dim, dim);
  for (const Gate& g : c.gates) {
    require(g.kind != GateKind::kReset, "circuit_unitary: circuit contains a reset");
    u = gate_unitary(g, c.width) * u;
  }
  return u;
}

cmat apply_circuit_raw(const Circuit& c, const cmat& rho_full) {
  const int dim = 1 << c.width;
  require(rho_full.rows() == dim && rho_full.cols() == dim, "state dimension mismatch");
  cmat rho = rho_full;
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::kReset) {
      cmat k0 = cmat::Zero(dim, dim);
      cmat k1 = cmat::Zero(dim, dim);
      for (int i = 0; i < dim; ++i) {
        if (bit_of(i, g.target, c.width) == 0)
          k0(i, i) = 1.0;
        else
          k1(flip_bit(i, g.target, c.width), i) = 1.0;
      }
      rho = k0 * rho * k0.adjoint() + k1 * rho * k1.adjoint();
    } else {
      const cmat u = gate_unitary(g, c.width);
      rho = u * rho * u.adjoint();
    }
  }
  return rho;
}

KrausChannel circuit_to_channel(const Circuit& c) {
  c.validate();
  const auto anc = c.ancillas();
  // every ancilla's last touching gate must be a reset
  for (int a : anc) {
    bool ok = false;
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
      const bool touches = it->target == a || it->control == a;
      if (!touches) continue;
      ok = (it->kind == GateKind::kReset);
      break;
    }
    require(ok, "ancilla qubit is not reset at the end of the block");
  }

  const int d = c.system_dim();
  const int dim = 1 << c.width;
  std::vector<int> dims(c.width, 2);

  // E(|i><j|) for every system matrix unit, ancillas starting in |0>
  std::vector<cmat> unit_out(static_cast<size_t>(d) * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      cmat full = cmat::Zero(dim, dim);
      // full-register indices whose system bits spell i/j and ancilla bits are 0
      int r = 0, cidx = 0;
      for (size_t b = 0; b < c.system.size(); ++b) {
        const int sys_bit_r = (i >> (c.system.size() - 1 - b)) & 1;
        const int sys_bit_c = (j >> (c.system.size() - 1 - b)) & 1;
        r |= sys_bit_r << (c.width - 1 - c.system[b]);
        cidx |= sys_bit_c << (c.width - 1 - c.system[b]);
      }
      full(r, cidx) = 1.0;
      unit_out[static_cast<size_t>(i) * d + j] =
          partial_trace_raw(apply_circuit_raw(c, full), c.system, dims);
    }
  }

  // Choi matrix J[(in,out),(in',out')] = <out|E(|in><in'|)|out'>
  cmat choi = cmat::Zero(d * d, d * d);
  for (int in = 0; in < d; ++in)
    for (int in2 = 0; in2 < d; ++in2)
      choi.block(in * d, in2 * d, d, d) = unit_out[static_cast<size_t>(in) * d + in2];
  choi = 0.5 * (choi + choi.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<cmat> es(choi);
  KrausChannel ch{d, d, {}};
  for (int m = 0; m < es.eigenvalues().size(); ++m) {
    const double lambda = es.eigenvalues()(m);
    if (lambda <= 1e-12) continue;
    cmat k(d, d);
    for (int in = 0; in < d; ++in)
      for (int out = 0; out < d; ++out) k(out, in) = es.eigenvectors()(in * d + out, m);
    ch.operators.push_back(std::sqrt(lambda) * k);
  }
  require(!ch.operators.empty(), "induced channel has no support");
  const double residual = validate_channel(ch);
  require(residual < 1e-10, "induced channel is not trace preserving");
  return ch;
}

double map_distance(const KrausChannel& a, const KrausChannel& b) {
  require(a.dim_in == b.dim_in && a.dim_out == b.dim_out, "channel dimensions differ");
  const int d = a.dim_in;
  double worst = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      cmat unit = cmat::Zero(d, d);
      unit(i, j) = 1.0;
      worst = std::max(worst, max_abs(apply_channel_raw(a, unit) - apply_channel_raw(b, unit)));
    }
  }
  return worst;
}

Circuit build_lattice_step(const LatticeParams& p, int step) {
  const auto [theta, phi] = step_angles(p, step);
  const double lambda = -dispersion(p, step) * p.dt;
  Circuit c;
  c.width = 3;
  c.system = {0};
  if (theta != 0.0) {
    c.gates.push_back(Gate::x(0));
    c.gates.push_back(Gate::cry(0, 1, theta));
    c.gates.push_back(Gate::x(0));
  }
  if (phi != 0.0) c.gates.push_back(Gate::cry(0, 2, phi));
  if (theta != 0.0) c.gates.push_back(Gate::cnot(1, 0));
  if (phi != 0.0) c.gates.push_back(Gate::cnot(2, 0));
  if (lambda != 0.0) c.gates.push_back(Gate::rz(0, lambda));
  c.gates.push_back(Gate::reset(1));
  c.gates.push_back(Gate::reset(2));
  return c;
}

Circuit lattice_step_unitary_hw(const LatticeParams& p, int step) {
  const auto [theta, phi] = step_angles(p, step);
  const double lambda = dispersion(p, step) * p.dt;
  Circuit c;
  c.width = 2;
  c.system = {0};
  // qubit convention here: |0> = occupied (reset target), |1> = empty
  if (theta != 0.0) c.gates.push_back(Gate::cry(0, 1, theta));
  if (phi != 0.0) {
    c.gates.push_back(Gate::x(0));
    c.gates.push_back(Gate::cry(0, 1, phi));
    c.gates.push_back(Gate::x(0));
  }
  c.gates.push_back(Gate::cnot(1, 0));
  if (lambda != 0.0) c.gates.push_back(Gate::rz(0, lambda));
  return c;
}

Circuit build_lattice_step_hw(const LatticeParams& p, int step) {
  Circuit c = lattice_step_unitary_hw(p, step);
  c.gates.push_back(Gate::reset(1));
  return c;
}

namespace {

Circuit build_hubbard_common(const TransitionCycle& cycle, bool expand_cry) {
  require(cycle.single_bit_flip(),
          "hubbard step circuits require a single-bit-flip (Gray) cycle order");
  Circuit c;
  c.width = 4;
  c.system = {0, 1};  // qubit 0 = n_down (high bit), qubit 1 = n_up (low bit)
  const int a_down = 2, a_up = 3;

  c.gates.push_back(Gate::rz(0, kPi / 2.0));
  c.gates.push_back(Gate::rz(1, kPi / 2.0));
  c.gates.push_back(Gate::cnot(0, a_down));
  c.gates.push_back(Gate::cnot(1, a_up));

  for (int e = 0; e < 4; ++e) {
    const int i = cycle.order[e];
    const int j = cycle.order[(e + 1) % 4];
    const double gamma = cycle.gamma_from[i];
    const double angle = 2.0 * std::asin(std::sqrt(gamma));
    if (angle == 0.0) continue;
    const int target = ((i ^ j) == 2) ? 0 : 1;  // which occupation bit flips
    const bool down_set = ((i >> 1) & 1) != 0;
    const bool up_set = (i & 1) != 0;
    if (!down_set) c.gates.push_back(Gate::x(a_down));
    if (!up_set) c.gates.push_back(Gate::x(a_up));
    append_ccry(c.gates, a_down, a_up, target, angle, expand_cry);
    if (!up_set) c.gates.push_back(Gate::x(a_up));
    if (!down_set) c.gates.push_back(Gate::x(a_down));
  }

  c.gates.push_back(Gate::rz(0, -kPi / 2.0));
  c.gates.push_back(Gate::rz(1, -kPi / 2.0));
  c.gates.push_back(Gate::reset(a_down));
  c.gates.push_back(Gate::reset(a_up));
  return c;
}

}  // namespace

Circuit build_hubbard_step(const TransitionCycle& cycle) { return build_hubbard_common(cycle, false); }

Circuit build_hubbard_step_transpiled(const TransitionCycle& cycle) {
  return build_hubbard_common(cycle, true);
}

std::string serialize(const Circuit& c) {
  std::ostringstream os;
  os << "# circuit width=" << c.width << " system=";
  for (size_t i = 0; i < c.system.size(); ++i) os << (i ? "," : "") << c.system[i];
  os << "\n";
  char buf[64];
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::kX:
        os << "X " << g.target << "\n";
        break;
      case GateKind::kCnot:
        os << "CNOT " << g.control << "," << g.target << "\n";
        break;
      case GateKind::kRz:
        std::snprintf(buf, sizeof buf, "%.17g", g.angle);
        os << "RZ " << g.target << "," << buf << "\n";
        break;
      case GateKind::kRy:
        std::snprintf(buf, sizeof buf, "%.17g", g.angle);
        os << "RY " << g.target << "," << buf << "\n";
        break;
      case GateKind::kCry:
        std::snprintf(buf, sizeof buf, "%.17g", g.angle);
        os << "CRY " << g.control << "," << g.target << "," << buf << "\n";
        break;
      case GateKind::kReset:
        os << "RESET " << g.target << "\n";
        break;
    }
  }
  return os.str();
}

Circuit parse_circuit(const std::string& text) {
  Circuit c;
  bool header_seen = false;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto fail = [&](const std::string& why) {
      std::ostringstream os;
      os << "circuit parse error at line " << line_no << ": " << why;
      throw validation_error(os.str());
    };
    // header comment carries the register structure
    if (line.rfind("# circuit", 0) == 0) {
      int w = 0;
      const auto wpos = line.find("width=");
      const auto spos = line.find("system=");
      if (wpos == std::string::npos || spos == std::string::npos) fail("malformed header");
      w = std::stoi(line.substr(wpos + 6));
      c.width = w;
      std::istringstream ss(line.substr(spos + 7));
      std::string tok;
      while (std::getline(ss, tok, ',')) c.system.push_back(std::stoi(tok));
      header_seen = true;
      continue;
    }
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;  // blank
    std::string rest;
    std::getline(ls, rest);
    std::vector<std::string> args;
    std::istringstream as(rest);
    std::string tok;
    while (std::getline(as, tok, ',')) args.push_back(tok);
    auto arg_int = [&](size_t idx) { return std::stoi(args.at(idx)); };
    auto arg_double = [&](size_t idx) { return std::stod(args.at(idx)); };
    try {
      if (kind == "X" && args.size() == 1)
        c.gates.push_back(Gate::x(arg_int(0)));
      else if (kind == "CNOT" && args.size() == 2)
        c.gates.push_back(Gate::cnot(arg_int(0), arg_int(1)));
      else if (kind == "RZ" && args.size() == 2)
        c.gates.push_back(Gate::rz(arg_int(0), arg_double(1)));
      else if (kind == "RY" && args.size() == 2)
        c.gates.push_back(Gate::ry(arg_int(0), arg_double(1)));
      else if (kind == "CRY" && args.size() == 3)
        c.gates.push_back(Gate::cry(arg_int(0), arg_int(1), arg_double(2)));
      else if (kind == "RESET" && args.size() == 1)
        c.gates.push_back(Gate::reset(arg_int(0)));
      else
        fail("unknown gate or wrong argument count: " + kind);
    } catch (const std::invalid_argument&) {
      fail("malformed argument for " + kind);
    }
  }
  require(header_seen, "circuit text lacks the '# circuit width=... system=...' header");
  c.validate();
  return c;
}

}  // namespace dissim
