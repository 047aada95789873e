#include "mcmw/params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mcmw {

namespace {
constexpr const char* kParamNames[6] = {"alpha", "gamma", "beta",
                                        "a",     "b",     "c"};
}

const char* parameter_name(int index) { return kParamNames[index]; }

std::vector<std::string> constraint_violations(double alpha, double gamma,
                                               double beta, double a, double b,
                                               double c) {
  std::vector<std::string> v;
  const double vals[6] = {alpha, gamma, beta, a, b, c};
  for (double x : vals)
    if (!std::isfinite(x)) {
      v.push_back("all parameters must be finite");
      break;
    }
  if (!(alpha >= 0.0)) v.push_back("alpha must be >= 0");
  if (!(gamma >= 0.0)) v.push_back("gamma must be >= 0");
  if (!(alpha + gamma > 0.0)) v.push_back("alpha + gamma must be positive");
  if (!(beta > 0.0)) v.push_back("beta must be positive");
  if (!(a > 0.0)) v.push_back("a must be positive");
  if (!(b > 0.0)) v.push_back("b must be positive");
  if (!(c > 0.0)) v.push_back("c must be positive");
  return v;
}

McMWParams validate(double alpha, double gamma, double beta, double a,
                    double b, double c) {
  auto violations = constraint_violations(alpha, gamma, beta, a, b, c);
  if (!violations.empty()) {
    std::ostringstream os;
    os << "invalid parameters:";
    for (const auto& s : violations) os << " " << s << ";";
    throw std::invalid_argument(os.str());
  }
  return {alpha, gamma, beta, a, b, c};
}

const char* submodel_name(Submodel m) {
  switch (m) {
    case Submodel::McMW: return "McMW";
    case Submodel::BMW: return "BMW";
    case Submodel::KMW: return "KMW";
    case Submodel::McW: return "McW";
    case Submodel::McLFR: return "McLFR";
    case Submodel::McR: return "McR";
    case Submodel::McE: return "McE";
    case Submodel::BR: return "BR";
    case Submodel::BLFR: return "BLFR";
    case Submodel::MW: return "MW";
    case Submodel::Weibull: return "Weibull";
    case Submodel::Rayleigh: return "Rayleigh";
    case Submodel::Exponential: return "Exponential";
    case Submodel::LFR: return "LFR";
  }
  return "?";
}

std::optional<Submodel> submodel_from_name(const std::string& name) {
  std::string s;
  for (char ch : name) s.push_back(static_cast<char>(std::tolower(ch)));
  if (s == "mcmw") return Submodel::McMW;
  if (s == "bmw") return Submodel::BMW;
  if (s == "kmw") return Submodel::KMW;
  if (s == "mcw") return Submodel::McW;
  if (s == "mclfr") return Submodel::McLFR;
  if (s == "mcr") return Submodel::McR;
  if (s == "mce") return Submodel::McE;
  if (s == "br") return Submodel::BR;
  if (s == "blfr") return Submodel::BLFR;
  if (s == "mw") return Submodel::MW;
  if (s == "weibull") return Submodel::Weibull;
  if (s == "rayleigh") return Submodel::Rayleigh;
  if (s == "exponential" || s == "exp") return Submodel::Exponential;
  if (s == "lfr") return Submodel::LFR;
  return std::nullopt;
}

int SubmodelSpec::free_count() const {
  int n = 0;
  for (bool f : fixed)
    if (!f) ++n;
  return n;
}

std::vector<int> SubmodelSpec::free_indices() const {
  std::vector<int> idx;
  for (int i = 0; i < 6; ++i)
    if (!fixed[i]) idx.push_back(i);
  return idx;
}

McMWParams SubmodelSpec::embed(const std::vector<double>& free) const {
  if (static_cast<int>(free.size()) != free_count())
    throw std::invalid_argument("submodel parameter count mismatch");
  std::array<double, 6> v = value;
  std::size_t k = 0;
  for (int i = 0; i < 6; ++i)
    if (!fixed[i]) v[i] = free[k++];
  return McMWParams::from_array(v);
}

std::vector<double> SubmodelSpec::extract(const McMWParams& p) const {
  std::vector<double> out;
  const auto v = p.as_array();
  for (int i = 0; i < 6; ++i)
    if (!fixed[i]) out.push_back(v[i]);
  return out;
}

SubmodelSpec submodel_spec(Submodel m) {
  // index order: alpha(0) gamma(1) beta(2) a(3) b(4) c(5)
  SubmodelSpec s{m, {false, false, false, false, false, false},
                 {0, 0, 1, 1, 1, 1}};
  auto pin = [&s](int i, double val) {
    s.fixed[i] = true;
    s.value[i] = val;
  };
  switch (m) {
    case Submodel::McMW: break;
    case Submodel::BMW: pin(5, 1.0); break;
    case Submodel::KMW: pin(3, 1.0); break;
    case Submodel::McW: pin(0, 0.0); break;
    case Submodel::McLFR: pin(2, 2.0); break;
    case Submodel::McR: pin(0, 0.0); pin(2, 2.0); break;
    case Submodel::McE: pin(1, 0.0); pin(2, 1.0); break;
    case Submodel::BR: pin(0, 0.0); pin(2, 2.0); pin(5, 1.0); break;
    case Submodel::BLFR: pin(2, 2.0); pin(5, 1.0); break;
    case Submodel::MW: pin(3, 1.0); pin(4, 1.0); pin(5, 1.0); break;
    case Submodel::Weibull:
      pin(0, 0.0); pin(3, 1.0); pin(4, 1.0); pin(5, 1.0); break;
    case Submodel::Rayleigh:
      pin(0, 0.0); pin(2, 2.0); pin(3, 1.0); pin(4, 1.0); pin(5, 1.0); break;
    case Submodel::Exponential:
      pin(1, 0.0); pin(2, 1.0); pin(3, 1.0); pin(4, 1.0); pin(5, 1.0); break;
    case Submodel::LFR:
      pin(2, 2.0); pin(3, 1.0); pin(4, 1.0); pin(5, 1.0); break;
  }
  return s;
}

McMWParams submodel(Submodel m, const std::vector<double>& free_params) {
  const auto spec = submodel_spec(m);
  const McMWParams p = spec.embed(free_params);
  return validate(p.alpha, p.gamma, p.beta, p.a, p.b, p.c);
}

}  // namespace mcmw
