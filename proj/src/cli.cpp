#include "fpdense/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpdense/coprime_search.hpp"
#include "fpdense/density_lab.hpp"
#include "fpdense/lift.hpp"
#include "fpdense/poly.hpp"

namespace fpdense::cli {

namespace {

// Flag values kept as text so every number is parsed exactly by our own parser.
struct Options {
  std::string target;
  std::string eps;
  std::string mode = "search";
  std::string start_floor = "2";
  std::string format = "text";
  std::string out_path;
  std::string chain;
  std::string p;
  std::string min_p;
  std::string coeffs;
  unsigned degree = 0;
  std::string p_list;
  std::size_t n = 0;
  std::uint64_t k = 0;
  std::uint64_t b = 0;
  std::string csv_path;
  std::string cert_path;
};

std::string join(const std::vector<std::string>& parts, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i > 0 ? sep : "") + parts[i];
  return out;
}

template <typename T>
std::vector<std::string> to_strings(const std::vector<T>& values) {
  std::vector<std::string> parts;
  for (const auto& v : values) parts.push_back(to_string(v));
  return parts;
}

template <typename T>
std::string join_values(const std::vector<T>& values) {
  return join(to_strings(values));
}

std::string approx_decimal(const Rational& q) {
  std::ostringstream s;
  s << std::setprecision(6) << q.get_d();
  return s.str();
}

std::uint64_t parse_u64(const std::string& text, const char* flag) {
  const Integer z = parse_integer(text);
  if (z < 1 || !z.fits_ulong_p()) throw Error(Errc::InvalidArgument, std::string(flag) + " out of range: " + text);
  return z.get_ui();
}

BuilderConfig builder_config(const Options& o) {
  BuilderConfig config;
  config.mode = parse_build_mode(o.mode);
  config.start_prime_floor = parse_integer(o.start_floor);
  return config;
}

ApproximateOptions approximate_options() {
  ApproximateOptions options;
  if (const char* steps = std::getenv("FPDENSE_PRIME_SEARCH_STEPS")) {
    options.prime_search.max_steps = parse_u64(steps, "FPDENSE_PRIME_SEARCH_STEPS");
  }
  return options;
}

void write_or_print(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(Errc::InvalidArgument, "cannot write " + path);
  file << text;
}

void print_dimension_note(std::size_t n, std::ostream& out) {
  if (n == 2) out << "note        n = 2 (two-dimensional case; density is only guaranteed for n >= 3)\n";
}

void print_certificate(const Certificate& c, std::ostream& out) {
  out << "target      " << join_values(c.target.coords) << '\n'
      << "eps         " << to_string(c.eps) << '\n'
      << "mode        " << build_mode_name(c.mode) << '\n'
      << "chain       " << join_values(c.chain.terms()) << '\n'
      << "class       " << c.congruence.residue << " mod " << c.congruence.modulus << '\n'
      << "prime floor " << c.prime_floor << '\n'
      << "p           " << c.witness.p << " (" << primality_method_name(c.primality_method) << ")\n"
      << "witness     " << join_values(c.witness.x) << '\n'
      << "errors      " << join_values(c.errors) << '\n'
      << "max error   " << to_string(c.max_error) << " (~" << approx_decimal(c.max_error) << ")\n";
  print_dimension_note(c.target.dimension(), out);
}

int cmd_approx(const Options& o, std::ostream& out) {
  const TargetPoint target(parse_rational_list(o.target));
  const Certificate cert = approximate(target, parse_rational(o.eps), builder_config(o), approximate_options());
  const std::string serialized = serialize_certificate(cert);
  if (!o.out_path.empty()) write_or_print(serialized, o.out_path, out);
  if (o.format == "structured") {
    out << serialized;
  } else {
    print_certificate(cert, out);
    if (!o.out_path.empty()) out << "certificate " << o.out_path << '\n';
  }
  return kSuccess;
}

int cmd_chain(const Options& o, std::ostream& out) {
  const TargetPoint target(parse_rational_list(o.target));
  const Rational eps = parse_rational(o.eps);
  const Chain chain = build_chain(target, eps, builder_config(o));
  std::vector<Rational> errors;
  for (std::size_t i = 1; i <= chain.dimension(); ++i) {
    errors.push_back(abs_diff(target.coords[i - 1], chain.coordinate(i)));
  }
  if (o.format == "structured") {
    nlohmann::ordered_json doc;
    doc["chain"] = nlohmann::json::array();
    for (const auto& a : chain.terms()) doc["chain"].push_back(to_string(a));
    doc["point"] = nlohmann::json::array();
    for (const auto& q : chain.point()) doc["point"].push_back(to_string(q));
    doc["errors"] = nlohmann::json::array();
    for (const auto& e : errors) doc["errors"].push_back(to_string(e));
    out << doc.dump(2) << '\n';
    return kSuccess;
  }
  out << "chain       " << join_values(chain.terms()) << '\n'
      << "point       " << join_values(chain.point()) << '\n'
      << "errors      " << join_values(errors) << '\n';
  print_dimension_note(target.dimension(), out);
  return kSuccess;
}

int cmd_lift(const Options& o, std::ostream& out) {
  const Chain chain(parse_integer_list(o.chain));
  const CongruenceClass cls = dirichlet_residue(chain);
  const Integer range_floor = min_prime_for_error(chain, Rational(1));
  Integer p;
  if (!o.p.empty()) {
    p = parse_integer(o.p);
    if (!is_prime(p)) throw Error(Errc::InvalidArgument, "--p " + o.p + " is not prime");
    if (!cls.contains(p)) {
      throw Error(Errc::CongruenceViolated, "--p " + o.p + " is not " + cls.residue.get_str() + " mod " +
                                                cls.modulus.get_str());
    }
    if (p < range_floor) {
      throw Error(Errc::InvalidArgument, "--p " + o.p + " is below the range floor " + range_floor.get_str());
    }
  } else {
    const Integer lower = o.min_p.empty() ? range_floor : std::max(range_floor, parse_integer(o.min_p));
    p = next_prime_in_ap(cls, lower, approximate_options().prime_search);
  }
  const WitnessPoint w = lift_chain(chain, p);
  const auto errors = lift_errors(chain, w);
  std::vector<Rational> point;
  for (const auto& xi : w.x) point.push_back(make_rational(xi, p));
  if (o.format == "structured") {
    nlohmann::ordered_json doc;
    doc["class"] = {{"residue", to_string(cls.residue)}, {"modulus", to_string(cls.modulus)}};
    doc["p"] = to_string(p);
    doc["x"] = nlohmann::json::array();
    for (const auto& xi : w.x) doc["x"].push_back(to_string(xi));
    doc["lift_errors"] = nlohmann::json::array();
    for (const auto& e : errors) doc["lift_errors"].push_back(to_string(e));
    out << doc.dump(2) << '\n';
    return kSuccess;
  }
  out << "class       " << cls.residue << " mod " << cls.modulus << '\n'
      << "p=" << p << '\n'
      << "point       (" << join(to_strings(w.x), ",") << ")\n"
      << "normalized  " << join_values(point) << '\n'
      << "lift errors " << join_values(errors) << '\n';
  return kSuccess;
}

int cmd_poly(const Options& o, std::ostream& out) {
  std::vector<Integer> coeffs = o.coeffs.empty() ? std::vector<Integer>{} : parse_integer_list(o.coeffs);
  if (o.degree < 1) throw Error(Errc::InvalidArgument, "--degree must be >= 1");
  if (o.coeffs.empty()) coeffs.assign(o.degree, 0);
  if (coeffs.size() != o.degree) {
    throw Error(Errc::InvalidArgument, "--coeffs needs exactly " + std::to_string(o.degree) +
                                           " entries (low to high, leading 1 omitted)");
  }
  const MonicPolynomial f(std::move(coeffs));
  const TargetPoint alphas(parse_rational_list(o.target));
  const PolyCertificate cert =
      approximate_polynomial(f, alphas, parse_rational(o.eps), builder_config(o), approximate_options());
  const std::string serialized = serialize_poly_certificate(cert);
  if (!o.out_path.empty()) write_or_print(serialized, o.out_path, out);
  if (o.format == "structured") {
    out << serialized;
    return kSuccess;
  }
  out << "f           " << f.to_string() << '\n'
      << "alphas      " << join_values(cert.alphas.coords) << '\n'
      << "roots       " << join_values(cert.root_targets.coords) << '\n'
      << "p           " << cert.inner.witness.p << '\n'
      << "witness     " << join_values(cert.inner.witness.x) << '\n'
      << "values      " << join_values(cert.values) << '\n'
      << "errors      " << join_values(cert.errors) << '\n';
  if (!o.out_path.empty()) out << "certificate " << o.out_path << '\n';
  return kSuccess;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  const std::uint64_t p = parse_u64(o.p, "--p");
  if (o.csv_path.empty()) {
    write_points_csv(out, p, o.n);
    return kSuccess;
  }
  std::ofstream file(o.csv_path, std::ios::binary);
  if (!file) throw Error(Errc::InvalidArgument, "cannot write " + o.csv_path);
  write_points_csv(file, p, o.n);
  return kSuccess;
}

int cmd_discrepancy(const Options& o, std::ostream& out) {
  std::vector<std::uint64_t> primes;
  if (!o.p_list.empty()) {
    for (const auto& z : parse_integer_list(o.p_list)) primes.push_back(parse_u64(z.get_str(), "--p-list"));
  } else {
    primes.push_back(parse_u64(o.p, "--p"));
  }
  std::vector<std::future<DiscrepancyReport>> jobs;
  for (const auto p : primes) {
    jobs.push_back(std::async(std::launch::async, [p, &o] { return box_discrepancy(p, o.n, o.k); }));
  }
  for (auto& job : jobs) {
    const DiscrepancyReport r = job.get();
    if (o.format == "structured") {
      out << serialize_report(r);
      continue;
    }
    out << "p=" << r.p << " n=" << r.n << " k=" << r.k << " total=" << r.total
        << " sup_deviation=" << to_string(r.sup_deviation) << " (~" << approx_decimal(r.sup_deviation) << ")"
        << " mean_abs_deviation=" << to_string(r.mean_abs_deviation) << " (~" << approx_decimal(r.mean_abs_deviation)
        << ")\n";
  }
  return kSuccess;
}

int cmd_nearest(const Options& o, std::ostream& out) {
  const std::uint64_t p = parse_u64(o.p, "--p");
  const Rational d = nearest_point_distance(p, TargetPoint(parse_rational_list(o.target)));
  out << "distance    " << to_string(d) << " (~" << approx_decimal(d) << ")\n";
  return kSuccess;
}

int cmd_jacobsthal(const Options& o, std::ostream& out) {
  out << "g(" << o.b << ") = " << jacobsthal(o.b) << '\n';
  return kSuccess;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  std::ifstream file(o.cert_path, std::ios::binary);
  if (!file) {
    err << "error: cannot read " << o.cert_path << '\n';
    return kUsageError;
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  VerifyResult result;
  try {
    const std::string text = buffer.str();
    result = certificate_format(text) == "fpdense-poly-certificate" ? verify_poly_certificate(parse_poly_certificate(text))
                                                                    : verify_certificate(parse_certificate(text));
  } catch (const Error& e) {
    result = {false, std::string("unreadable certificate: ") + e.what()};
  }
  if (result) {
    out << "valid\n";
    return kSuccess;
  }
  out << "invalid: " << result.reason << '\n';
  return kInvalidCertificate;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explicit approximations by points of x_1 x_2 ... x_n = 1 (mod p)", "fpdense"};
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "structured"}));
  };
  auto add_builder = [&](CLI::App* sub) {
    sub->add_option("--mode", o.mode, "Chain construction mode")->check(CLI::IsMember({"search", "faithful"}));
    sub->add_option("--start-prime-floor", o.start_floor, "Initial lower bound for the chain prime (search mode)");
  };

  auto* approx = app.add_subcommand("approx", "Approximate a target point and emit a certificate");
  approx->add_option("--target", o.target, "Comma-separated coordinates in [0,1]")->required();
  approx->add_option("--eps", o.eps, "Tolerance, e.g. 1/100 or 0.01")->required();
  approx->add_option("--out", o.out_path, "Write the certificate to this file");
  add_builder(approx);
  add_format(approx);

  auto* chain = app.add_subcommand("chain", "Build a coprime chain approximating a target");
  chain->add_option("--target", o.target, "Comma-separated coordinates in [0,1]")->required();
  chain->add_option("--eps", o.eps, "Tolerance")->required();
  add_builder(chain);
  add_format(chain);

  auto* lift = app.add_subcommand("lift", "Lift a chain to a point on the hypersurface");
  lift->add_option("--chain", o.chain, "Chain terms a0,a1,...,an")->required();
  auto* lift_p = lift->add_option("--p", o.p, "Use this prime");
  auto* lift_min = lift->add_option("--min-p", o.min_p, "Use the least admissible prime >= this bound");
  lift_p->excludes(lift_min);
  add_format(lift);

  auto* poly = app.add_subcommand("poly", "Approximate with values f(x_i)/p^d of a monic polynomial");
  poly->add_option("--degree", o.degree, "Degree d of f")->required();
  poly->add_option("--coeffs", o.coeffs, "Coefficients c0,...,c_{d-1} (leading 1 omitted)");
  poly->add_option("--target", o.target, "Comma-separated coordinates in [0,1]")->required();
  poly->add_option("--eps", o.eps, "Tolerance")->required();
  poly->add_option("--out", o.out_path, "Write the certificate to this file");
  add_builder(poly);
  add_format(poly);

  auto* enumerate = app.add_subcommand("enumerate", "List all points on the hypersurface mod p as CSV");
  enumerate->add_option("--p", o.p, "Prime")->required();
  enumerate->add_option("--n", o.n, "Dimension")->required();
  enumerate->add_option("--csv", o.csv_path, "Write CSV to this file instead of stdout");

  auto* discrepancy = app.add_subcommand("discrepancy", "Box-counting discrepancy of the points mod p");
  auto* disc_p = discrepancy->add_option("--p", o.p, "Prime");
  auto* disc_list = discrepancy->add_option("--p-list", o.p_list, "Comma-separated primes");
  disc_p->excludes(disc_list);
  discrepancy->add_option("--n", o.n, "Dimension")->required();
  discrepancy->add_option("--k", o.k, "Boxes per axis")->required();
  add_format(discrepancy);

  auto* nearest = app.add_subcommand("nearest", "Distance from a target to the nearest point mod p");
  nearest->add_option("--p", o.p, "Prime")->required();
  nearest->add_option("--target", o.target, "Comma-separated coordinates in [0,1]")->required();

  auto* jac = app.add_subcommand("jacobsthal", "Jacobsthal function g(b)");
  jac->add_option("--b", o.b, "Argument b >= 1")->required();

  auto* verify = app.add_subcommand("verify", "Check a certificate file");
  verify->add_option("--cert", o.cert_path, "Certificate file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (discrepancy->parsed() && o.p.empty() && o.p_list.empty()) {
      throw CLI::RequiredError("--p or --p-list");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (approx->parsed()) return cmd_approx(o, out);
    if (chain->parsed()) return cmd_chain(o, out);
    if (lift->parsed()) return cmd_lift(o, out);
    if (poly->parsed()) return cmd_poly(o, out);
    if (enumerate->parsed()) return cmd_enumerate(o, out);
    if (discrepancy->parsed()) return cmd_discrepancy(o, out);
    if (nearest->parsed()) return cmd_nearest(o, out);
    if (jac->parsed()) return cmd_jacobsthal(o, out);
    if (verify->parsed()) return cmd_verify(o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    const bool usage = e.code() == Errc::InvalidArgument || e.code() == Errc::ParseError;
    return usage ? kUsageError : kSearchExhausted;
  }
  return kUsageError;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace fpdense::cli
