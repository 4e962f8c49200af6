#include "altcantor/cli.hpp"

#include <charconv>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "altcantor/codec.hpp"
#include "altcantor/dynamics.hpp"
#include "altcantor/error.hpp"
#include "altcantor/geometry.hpp"
#include "altcantor/series.hpp"
#include "altcantor/transforms.hpp"

namespace altcantor::cli {

namespace {

using Json = nlohmann::ordered_json;

class Scanner {
 public:
  explicit Scanner(std::string_view s) : s_(s) {}

  bool done() const { return pos_ == s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }

  bool eat(std::string_view lit) {
    if (s_.substr(pos_).starts_with(lit)) {
      pos_ += lit.size();
      return true;
    }
    return false;
  }

  std::int64_t integer() {
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec == std::errc::result_out_of_range) fail("integer out of range");
    if (ec != std::errc()) fail("expected an integer");
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  // Comma separated integers up to ';' or the end.
  std::vector<std::int64_t> integers(bool allow_empty) {
    std::vector<std::int64_t> out;
    if (done() || peek() == ';') {
      if (!allow_empty) fail("expected a non-empty list");
      return out;
    }
    out.push_back(integer());
    while (eat(",")) out.push_back(integer());
    return out;
  }

  void expect_end() {
    if (!done()) fail("unexpected '" + std::string(1, peek()) + "'");
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

ExactRational parse_rational(const std::string& text) { return ExactRational::parse(text); }

mpz_class parse_integer(const std::string& text) {
  mpz_class z;
  if (text.empty() || z.set_str(text, 10) != 0) throw ParseError(0, "expected an integer, got '" + text + "'");
  return z;
}

std::vector<Digit> parse_list(const std::string& text) {
  Scanner sc(text);
  auto v = sc.integers(true);
  sc.expect_end();
  return v;
}

// "k:c,k:c,..."
PositionConstraint parse_positions(const std::string& text) {
  Scanner sc(text);
  PositionConstraint c;
  if (sc.done()) return c;
  do {
    const std::int64_t k = sc.integer();
    if (k < 1) sc.fail("positions start at 1");
    if (!sc.eat(":")) sc.fail("expected ':'");
    c.entries.emplace_back(static_cast<std::size_t>(k), sc.integer());
  } while (sc.eat(","));
  sc.expect_end();
  return c;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size()) throw ParseError(0, "bad alpha '" + item + "'");
    out.push_back(v);
  }
  return out;
}

Json tail_json(const DigitString& d) {
  if (d.has_zeros_tail()) return "zeros";
  if (d.is_truncated()) return "trunc";
  return Json{{"periodic", d.period()}};
}

Json digits_json(const DigitString& d) {
  Json j;
  j["digits"] = d.prefix();
  j["tail"] = tail_json(d);
  j["kind"] = series_kind_name(d.kind());
  return j;
}

void put_value(Json& j, const SeriesValue& v) {
  if (const auto* r = std::get_if<ExactRational>(&v)) {
    j["value"] = r->to_string();
  } else {
    const auto& i = std::get<ExactInterval>(v);
    j["lo"] = i.lo().to_string();
    j["hi"] = i.hi().to_string();
  }
}

SeriesValue value_of(const DigitString& d, const BasisSequence& b, std::size_t depth) {
  if (exactly_evaluable(d, b)) return evaluate_exact(d, b);
  return evaluate_enclosure(d, b, depth);
}

void put_interval(Json& j, const ExactInterval& i) {
  j["lo"] = i.lo().to_string();
  j["hi"] = i.hi().to_string();
  j["length"] = i.width().to_string();
}

void write_cover_csv(std::ostream& out, std::size_t rank, std::vector<ExactInterval> rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.lo() < b.lo(); });
  out << "rank,lo,hi,length\n";
  for (const auto& r : rows) out << rank << ',' << r.lo() << ',' << r.hi() << ',' << r.width() << '\n';
}

std::string_view class_name(EncodingClass c) {
  switch (c) {
    case EncodingClass::Terminating: return "terminating";
    case EncodingClass::PeriodicTail: return "periodic";
    case EncodingClass::TruncatedAtHorizon: return "truncated";
  }
  return "unknown";
}

}  // namespace

BasisSequence parse_basis(std::string_view text) {
  if (text == "factorial") return BasisSequence::rule(BasisRule::Factorial);
  if (text == "primes") return BasisSequence::rule(BasisRule::Primes);
  if (text == "even") return BasisSequence::rule(BasisRule::Even);
  Scanner sc(text);
  if (sc.eat("const:")) {
    const std::int64_t d = sc.integer();
    sc.expect_end();
    return BasisSequence::constant(d);
  }
  if (sc.eat("periodic:")) {
    auto period = sc.integers(false);
    sc.expect_end();
    return BasisSequence::periodic(std::move(period));
  }
  if (sc.eat("prefix:")) {
    auto prefix = sc.integers(true);
    if (!sc.eat(";periodic:")) sc.fail("expected ';periodic:'");
    auto period = sc.integers(false);
    sc.expect_end();
    return BasisSequence::eventually_periodic(std::move(prefix), std::move(period));
  }
  sc.fail("unknown basis");
}

DigitPattern parse_digits(std::string_view text) {
  Scanner sc(text);
  DigitPattern p;
  p.prefix = sc.integers(true);
  bool seen_tail = false, seen_kind = false;
  while (sc.eat(";")) {
    if (sc.eat("tail=")) {
      if (seen_tail) sc.fail("tail given twice");
      seen_tail = true;
      if (sc.eat("zeros")) {
        p.tail = ZerosTail{};
      } else if (sc.eat("periodic:")) {
        p.tail = PeriodicTail{sc.integers(false)};
      } else if (sc.eat("trunc")) {
        p.tail = TruncatedTail{};
      } else {
        sc.fail("expected zeros, periodic:<...> or trunc");
      }
    } else if (sc.eat("kind=")) {
      if (seen_kind) sc.fail("kind given twice");
      seen_kind = true;
      if (sc.eat("negadn")) {
        p.kind = SeriesKind::NegaDn;
      } else if (sc.eat("negad")) {
        p.kind = SeriesKind::NegaD;
      } else if (sc.eat("posd")) {
        p.kind = SeriesKind::PositiveD;
      } else {
        sc.fail("expected negad, negadn or posd");
      }
    } else {
      sc.fail("expected tail= or kind=");
    }
  }
  sc.expect_end();
  return p;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact alternating Cantor series toolkit", "altcantor"};
  app.require_subcommand(1);
  std::map<std::string, std::string> s;  // string options by name
  std::size_t horizon = 256, depth = 0, k = 0, del = 0, rank = 0, budget = 0, eval_depth = 64;
  int approx = 0;
  bool no_cycle = false, dshift = false, no_gate = false;

  auto str = [&](CLI::App* sub, const std::string& name, const std::string& help, bool required = false) {
    auto* o = sub->add_option("--" + name, s[name], help);
    if (required) o->required();
    return o;
  };
  auto fmt = [&](CLI::App* sub, std::vector<std::string> allowed) {
    s["format"] = allowed.front();
    sub->add_option("--format", s["format"], "output format")->check(CLI::IsMember(allowed));
  };

  auto* enc = app.add_subcommand("encode", "canonical digits of a rational");
  str(enc, "basis", "basis", true);
  str(enc, "x", "rational p/q", true);
  enc->add_option("--horizon", horizon, "digit limit for rule bases");
  enc->add_flag("--no-cycle", no_cycle, "treat the horizon as a hard limit");
  fmt(enc, {"json", "text"});

  auto* dec = app.add_subcommand("decode", "value of a digit string");
  str(dec, "basis", "basis", true);
  str(dec, "digits", "digit string", true);
  dec->add_option("--depth", eval_depth, "terms summed for enclosures");
  dec->add_option("--approx", approx, "add a decimal display with this many digits");
  fmt(dec, {"json", "text"});

  auto* conv = app.add_subcommand("convert", "map digits between numeral systems");
  str(conv, "basis", "basis", true);
  str(conv, "digits", "digit string", true);
  str(conv, "op", "negadn|negad|complement-even|complement-odd|compress|split", true)
      ->check(CLI::IsMember({"negadn", "negad", "complement-even", "complement-odd", "compress", "split"}));

  auto* sh = app.add_subcommand("shift", "shift operators");
  str(sh, "basis", "basis", true);
  str(sh, "digits", "digit string", true);
  auto* ok = sh->add_option("--k", k, "drop the first k digits");
  auto* od = sh->add_option("--delete", del, "delete position m");
  auto* os = sh->add_flag("--digit-shift", dshift, "shift digits over the same basis");
  ok->excludes(od)->excludes(os);
  od->excludes(os);

  auto* cyl = app.add_subcommand("cylinder", "cylinder interval of a base, or the base containing x");
  str(cyl, "basis", "basis", true);
  str(cyl, "base", "digits c1,...,cm");
  str(cyl, "x", "rational to locate");
  cyl->add_option("--rank", rank, "rank for --x");

  auto* mea = app.add_subcommand("measure", "measure and diameter of a digit-position set");
  str(mea, "basis", "basis", true);
  str(mea, "positions", "k:c,k:c,...", true);
  s["emit"] = "stats";
  mea->add_option("--emit", s["emit"], "stats|cover")->check(CLI::IsMember({"stats", "cover"}));
  mea->add_option("--rank", rank, "cover rank");
  fmt(mea, {"json", "csv"});

  auto* ms = app.add_subcommand("msum", "incomplete sums of a fixed series");
  str(ms, "basis", "basis", true);
  str(ms, "s0", "digit string of the fixed series", true);
  ms->add_option("--depth", depth, "cover depth");
  str(ms, "select", "choices c1,...,cn for --emit cylinder");
  s["ms_emit"] = "cover";
  ms->add_option("--emit", s["ms_emit"], "cover|gaps|classify|cylinder")
      ->check(CLI::IsMember({"cover", "gaps", "classify", "cylinder"}));
  fmt(ms, {"json", "csv"});

  auto* dim = app.add_subcommand("dim", "covering-sum dimension estimate");
  str(dim, "basis", "basis", true);
  str(dim, "alphabet", "digit alphabet V of C[-D,V]");
  str(dim, "s0", "incomplete sums of this series");
  str(dim, "positions", "digit-position set k:c,...");
  dim->add_option("--depth", depth, "cover rank")->required();
  str(dim, "alpha-grid", "comma separated alpha values");
  dim->add_flag("--no-gate", no_gate, "estimate even when the faithfulness gate fails");

  auto* rat = app.add_subcommand("rational", "finite expansion test for p/q");
  str(rat, "basis", "basis", true);
  str(rat, "p", "numerator", true);
  str(rat, "q", "denominator", true);

  auto* pr = app.add_subcommand("probe", "repeat search in the shift orbit");
  str(pr, "basis", "basis", true);
  str(pr, "x", "rational");
  str(pr, "digits", "digit string");
  pr->add_option("--budget", budget, "shift iterations");

  std::vector<std::string> argv_store{"altcantor"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kOk;
    } catch (const CLI::ParseError& e) {
      if (e.get_exit_code() == 0) {
        out << app.help();
        return kOk;
      }
      err << "error: " << error_code_name(ErrorCode::ParseError) << ": " << e.what() << '\n';
      return kParseError;
    }

    const auto has = [&](const std::string& name) { return !s[name].empty(); };
    const auto emit = [&](const Json& j) { out << j.dump() << '\n'; };
    // Flat object with ", " and ": " separators.
    const auto emit_spaced = [&](const Json& j) {
      std::string line = "{";
      for (const auto& [key, value] : j.items()) {
        if (line.size() > 1) line += ", ";
        line += Json(key).dump() + ": " + value.dump();
      }
      out << line << "}\n";
    };

    if (enc->parsed()) {
      const BasisSequence b = parse_basis(s["basis"]);
      const EncodingResult r = encode(parse_rational(s["x"]), b, horizon, {.cycle_detection = !no_cycle});
      if (s["format"] == "text") {
        out << r.digits.to_string() << '\n';
      } else {
        emit(Json{{"digits", r.digits.prefix()}, {"tail", tail_json(r.digits)}, {"class", class_name(r.classification)}});
      }
    } else if (dec->parsed()) {
      const BasisSequence b = parse_basis(s["basis"]);
      const DigitString d(parse_digits(s["digits"]), b);
      const SeriesValue v = value_of(d, b, eval_depth);
      if (s["format"] == "text") {
        if (const auto* r = std::get_if<ExactRational>(&v)) {
          out << r->to_string() << '\n';
        } else {
          out << std::get<ExactInterval>(v) << '\n';
        }
      } else {
        Json j;
        put_value(j, v);
        if (approx > 0) {
          const auto* r = std::get_if<ExactRational>(&v);
          j["approx"] = r ? r->to_decimal(approx) : std::get<ExactInterval>(v).midpoint().to_decimal(approx);
        }
        emit(j);
      }
    } else if (conv->parsed()) {
      const BasisSequence b = parse_basis(s["basis"]);
      const DigitString d(parse_digits(s["digits"]), b);
      const std::string& op = s["op"];
      auto report = [&](const DigitString& r, const BasisSequence& rb) {
        Json j = digits_json(r);
        put_value(j, value_of(r, rb, eval_depth));
        return j;
      };
      if (op == "split") {
        const auto [odd, even] = parity_split(d, b);
        emit(Json{{"odd", report(odd, b)}, {"even", report(even, b)}});
      } else if (op == "compress") {
        const CompressedDigits c = pair_compress(d, b);
        Json j = report(c.digits, c.basis.compressed);
        j["basis"] = c.basis.compressed.to_string();
        j["padded"] = c.padded;
        emit(j);
      } else {
        DigitString r = op == "negadn"            ? negadn_of_negad(d, b)
                        : op == "negad"           ? negad_of_negadn(d, b)
                        : op == "complement-even" ? parity_complement(d, b, Parity::Even)
                                                  : parity_complement(d, b, Parity::Odd);
        emit(report(r, b));
      }
    } else if (sh->parsed()) {
      const BasisSequence b = parse_basis(s["basis"]);
      const DigitString d(parse_digits(s["digits"]), b);
      if (dshift) {
        const DigitString r = digit_shift(d, b);
        Json j = digits_json(r);
        j["basis"] = b.to_string();
        put_value(j, value_of(r, b, eval_depth));
        emit(j);
      } else {
        if (k == 0 && del == 0) throw ParseError(0, "one of --k, --delete, --digit-shift is required");
        const ShiftResult r = k > 0 ? shift(d, b, k) : shift_delete(d, b, del);
        Json j = digits_json(r.digits);
        j["basis"] = r.basis.to_string();
        put_value(j, r.value);
        emit(j);
      }
    } else if (cyl->parsed()) {
      const BasisSequence b = parse_basis(s["basis"]);
      if (has("base") == has("x")) throw ParseError(0, "give exactly one of --base and --x");
      const CylinderBase base = has("base") ? parse_list(s["base"]) : locate(parse_rational(s["x"]), b, rank);
      Json j{{"base", base}};
      put_interval(j, cylinder(base, b));
      emit(j);
    } else if (mea->parsed()) {
      const BasisSequence b = parse_basis(s["basis"]);
      const PositionConstraint c = parse_positions(s["positions"]);
      if (s["emit"] == "stats") {
        const PositionStats st = position_set_stats(c, b);
        emit(Json{{"measure", st.measure.to_string()}, {"diameter", st.diameter.to_string()}});
      } else {
        const auto cover = position_set_cover(c, b, rank);
        std::vector<ExactInterval> rows;
        for (const auto& base : cover) rows.push_back(cylinder(base, b));
        if (s["format"] == "csv") {
          write_cover_csv(out, rank, rows);
        } else {
          Json list = Json::array();
          for (std::size_t i = 0; i < cover.size(); ++i) {
            Json j{{"base", cover[i]}};
            put_interval(j, rows[i]);
            list.push_back(j);
          }
          emit(Json{{"rank", rank}, {"cylinders", list}});
        }
      }
    } else if (ms->parsed()) {
      const BasisSequence b = parse_basis(s["basis"]);
      const IncompleteSumSpec spec(DigitString(parse_digits(s["s0"]), b), b);
      const std::string& what = s["ms_emit"];
      if (what == "classify") {
        const MsClassification c = ms0_classify(spec);
        Json j{{"class", ms_class_name(c.kind)}};
        if (c.segment) {
          j["lo"] = c.segment->lo().to_string();
          j["hi"] = c.segment->hi().to_string();
        }
        if (c.cover_total) {
          j["depth"] = c.cover_depth;
          j["count"] = c.cover_count;
          j["total_length"] = c.cover_total->to_string();
        }
        emit(j);
      } else if (what == "cylinder") {
        Json j;
        put_interval(j, ms0_cylinder(spec, parse_list(s["select"])));
        emit(j);
      } else {
        const MsCover cover = ms0_cover(spec, depth);
        if (what == "gaps") {
          if (s["format"] == "csv") {
            out << "rank,parent,gap\n";
            for (const auto& g : cover.gaps) {
              std::string parent;
              for (std::size_t i = 0; i < g.parent.size(); ++i) parent += (i ? " " : "") + std::to_string(g.parent[i]);
              out << depth << ',' << parent << ',' << g.gap << '\n';
            }
          } else {
            Json list = Json::array();
            for (const auto& g : cover.gaps) list.push_back(Json{{"parent", g.parent}, {"gap", g.gap.to_string()}});
            emit(Json{{"depth", depth}, {"gaps", list}});
          }
        } else if (s["format"] == "csv") {
          std::vector<ExactInterval> rows;
          for (const auto& iv : cover.intervals) rows.push_back(iv.interval);
          write_cover_csv(out, depth, rows);
        } else {
          Json list = Json::array();
          for (const auto& iv : cover.intervals) {
            Json j{{"selection", iv.selection}};
            put_interval(j, iv.interval);
            list.push_back(j);
          }
          emit(Json{{"depth", depth}, {"total_length", cover.total_length.to_string()}, {"intervals", list}});
        }
      }
    } else if (dim->parsed()) {
      const BasisSequence b = parse_basis(s["basis"]);
      const int chosen = has("alphabet") + has("s0") + has("positions");
      if (chosen != 1) throw ParseError(0, "give exactly one of --alphabet, --s0, --positions");
      std::optional<CoverTarget> target;
      if (has("alphabet")) target = DigitAlphabet{parse_list(s["alphabet"])};
      if (has("s0")) target = IncompleteSumSpec(DigitString(parse_digits(s["s0"]), b), b);
      if (has("positions")) target = parse_positions(s["positions"]);
      DimensionOptions opt;
      opt.require_gate = !no_gate;
      if (has("alpha-grid")) opt.alpha_grid = parse_grid(s["alpha-grid"]);
      const DimensionEstimate e = dimension_estimate(*target, b, depth, opt);
      Json table = Json::array();
      for (const auto& row : e.table) table.push_back(Json{{"alpha", row.alpha}, {"log_sum", row.log_sum}});
      Json j{{"estimate", e.estimate}, {"gate", e.gate.passed}};
      j["comparison_constant"] = e.gate.comparison_constant ? Json(e.gate.comparison_constant->get_str()) : Json();
      j["depth"] = e.depth;
      j["table"] = table;
      emit(j);
    } else if (rat->parsed()) {
      const BasisSequence b = parse_basis(s["basis"]);
      const auto n0 = finite_expansion(parse_integer(s["p"]), parse_integer(s["q"]), b);
      emit_spaced(Json{{"finite_expansion", n0.has_value()}, {"n0", n0 ? Json(*n0) : Json()}});
    } else if (pr->parsed()) {
      const BasisSequence b = parse_basis(s["basis"]);
      if (has("x") == has("digits")) throw ParseError(0, "give exactly one of --x and --digits");
      ProbeResult r;
      if (has("x")) {
        const ExactRational x = parse_rational(s["x"]);
        r = rationality_probe(x, b, budget > 0 ? budget : rationality_budget(x, b));
      } else {
        r = rationality_probe(DigitString(parse_digits(s["digits"]), b), b, budget > 0 ? budget : 64);
      }
      Json j{{"witness", r.witness ? Json{{"k", r.witness->k}, {"t", r.witness->t}} : Json()}};
      j["iterations"] = r.iterations;
      j["unrefuted_pairs"] = r.unrefuted_pairs;
      emit(j);
    }
    return kOk;
  } catch (const Error& e) {
    err << "error: " << error_code_name(e.code()) << ": " << e.what() << '\n';
    return e.code() == ErrorCode::ParseError ? kParseError : kDomainError;
  }
}

}  // namespace altcantor::cli
