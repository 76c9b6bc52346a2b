#include "qalat/pretzel.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qalat/check.hpp"

namespace qalat {

void validate_pretzel(const PretzelSpec& s) {
  if (s.e < 0) throw std::invalid_argument("pretzel parameter e must be non-negative");
  for (int v : s.p)
    if (v < 2) throw std::invalid_argument("every pretzel parameter p_i must be at least 2");
  for (int v : s.q)
    if (v < 3) throw std::invalid_argument("every pretzel parameter q_j must be at least 3");
}

Int pretzel_determinant(const PretzelSpec& s) {
  validate_pretzel(s);
  Rat sum(s.e);
  Int prod = 1;
  for (int v : s.p) {
    sum += Rat(1, v);
    prod *= v;
  }
  for (int v : s.q) {
    sum -= Rat(1, v);
    prod *= v;
  }
  Rat value = Rat(prod) * sum;
  value.canonicalize();
  internal_check(value.get_den() == 1, "pretzel determinant formula must be integral");
  return value.get_num();
}

std::string montesinos_description(const PretzelSpec& s) {
  int m = static_cast<int>(s.q.size());
  std::ostringstream out;
  out << "M(" << (s.e - m);
  bool first = true;
  for (int v : s.p) {
    out << (first ? "; " : ", ") << "(" << v << ",1)";
    first = false;
  }
  for (int v : s.q) {
    out << (first ? "; " : ", ") << "(" << v << "," << (v - 1) << ")";
    first = false;
  }
  out << ")";
  return out.str();
}

std::string to_string(Verdict v) { return v == Verdict::QA ? "QA" : "NOT_QA"; }

namespace {

enum class Clause {
  DEGENERATE,
  CASE1,
  CASE2,
  CASE4,
  CASE3,
  ALTERNATING_NEGATIVE,
  NQ_MIN_SINGLE_NEG,
  NQ_MIN_SINGLE_POS,
  NQ_THICK,
  NQ_MIRROR_TWIST,
};

PretzelSpec sorted_spec(PretzelSpec s) {
  validate_pretzel(s);
  std::sort(s.p.begin(), s.p.end());
  std::sort(s.q.begin(), s.q.end());
  return s;
}

// The classification clauses, tested in this exact order; every (e, n, m)
// combination lands in exactly one branch (the QA cases (1), (2), (4), (3)
// first, then the complementary NOT_QA analyses).
Clause decide(const PretzelSpec& s) {
  int e = s.e;
  int n = static_cast<int>(s.p.size());
  int m = static_cast<int>(s.q.size());
  if (e == 0 && n == 0 && m == 0) return Clause::DEGENERATE;
  if (e > m - 1) return Clause::CASE1;
  if (e == m - 1 && e > 0) return Clause::CASE2;
  if (e == 0 && m == 1 && (n <= 1 || s.q[0] > s.p[0])) return Clause::CASE4;
  if (e == 0 && n == 1 && (m <= 1 || s.p[0] > s.q[0])) return Clause::CASE3;
  if (e == 0 && n == 0) return Clause::ALTERNATING_NEGATIVE;  // m >= 2 here
  if (e == 0 && m == 1) return Clause::NQ_MIN_SINGLE_NEG;     // n >= 2, q_1 <= min(p)
  if (e == 0 && n == 1) return Clause::NQ_MIN_SINGLE_POS;     // m >= 2, p_1 <= min(q)
  if (e + n >= 2) return Clause::NQ_THICK;                    // e < m-1 here
  internal_check(e == 1 && n == 0 && m >= 3, "classification clauses must be exhaustive");
  return Clause::NQ_MIRROR_TWIST;
}

std::string clause_tag(Clause c, const PretzelSpec& s) {
  std::ostringstream out;
  switch (c) {
    case Clause::DEGENERATE:
      return "degenerate";
    case Clause::CASE1:
      out << "case (1): e = " << s.e << " > m-1 = " << (static_cast<int>(s.q.size()) - 1)
          << ", connected alternating diagram";
      return out.str();
    case Clause::CASE2:
      out << "case (2): e = m-1 = " << s.e << " > 0, inductive resolution";
      return out.str();
    case Clause::CASE4:
      if (s.p.size() <= 1)
        out << "case (4): e = 0, m = 1, n <= 1";
      else
        out << "case (4): e = 0, m = 1, q_1 = " << s.q[0] << " > min(p) = " << s.p[0];
      return out.str();
    case Clause::CASE3:
      if (s.q.size() <= 1)
        out << "case (3): e = 0, n = 1, m <= 1";
      else
        out << "case (3): e = 0, n = 1, p_1 = " << s.p[0] << " > min(q) = " << s.q[0];
      return out.str();
    case Clause::ALTERNATING_NEGATIVE:
      return "alternating (all-negative)";
    case Clause::NQ_MIN_SINGLE_NEG:
      out << "case (4) fails: e = 0, m = 1, n >= 2, q_1 = " << s.q[0]
          << " is not greater than min(p) = " << s.p[0];
      return out.str();
    case Clause::NQ_MIN_SINGLE_POS:
      out << "case (3) fails: e = 0, n = 1, m >= 2, p_1 = " << s.p[0]
          << " is not greater than min(q) = " << s.q[0];
      return out.str();
    case Clause::NQ_THICK:
      return "e < m-1 with e+n >= 2 (cited: adequate diagram, Kh-thick)";
    case Clause::NQ_MIRROR_TWIST:
      return "e = 1, n = 0, m >= 3: minimum criterion applied to the mirror";
  }
  return "";
}

bool clause_is_qa(Clause c) {
  switch (c) {
    case Clause::DEGENERATE:
    case Clause::CASE1:
    case Clause::CASE2:
    case Clause::CASE4:
    case Clause::CASE3:
    case Clause::ALTERNATING_NEGATIVE:
      return true;
    default:
      return false;
  }
}

LinkNode pretzel_node(const PretzelSpec& s) {
  LinkNode node;
  node.kind = LinkKind::PRETZEL;
  node.spec = s;
  node.det = pretzel_determinant(s);
  return node;
}

LinkNode alternating_node(const PretzelSpec& s) {
  LinkNode node;
  node.kind = LinkKind::ALTERNATING_FORM;
  node.spec = s;
  node.montesinos = montesinos_description(s);
  node.det = pretzel_determinant(s);
  return node;
}

// Case-(2) recursion: resolve a crossing in the tassle with -q_m half-twists
// (q_m the largest q).  One resolution drops that tassle entirely and lands
// in case (1); the other replaces -q_m by -(q_m - 1), rewriting a resulting
// -2 tassle as P(e-1; 2, ...).  Recursion terminates because e + sum(q)
// strictly decreases.
QACertificate build_rec(const PretzelSpec& s) {
  Clause c = decide(s);
  if (c == Clause::CASE1) {
    QACertificate leaf;
    leaf.link = alternating_node(s);
    internal_check(leaf.link.det > 0, "alternating leaf determinant must be positive");
    return leaf;
  }
  if (c == Clause::CASE4) {
    // Reached only through the q_m = 3 rewrite with e-1 = 0; the rewrite
    // appends a 2 to p, so the minimum criterion q_1 > min(p) = 2 holds.
    QACertificate leaf;
    leaf.link = pretzel_node(s);
    internal_check(leaf.link.det > 0, "pretzel leaf determinant must be positive");
    return leaf;
  }
  internal_check(c == Clause::CASE2, "certificate recursion must stay in the inductive case");

  int m = static_cast<int>(s.q.size());
  int qm = s.q[m - 1];

  PretzelSpec l0 = s;
  l0.q.pop_back();

  PretzelSpec l1;
  if (qm > 3) {
    l1 = s;
    l1.q[m - 1] = qm - 1;
  } else {
    l1.e = s.e - 1;
    l1.p = s.p;
    l1.p.insert(l1.p.begin(), 2);
    l1.q = s.q;
    l1.q.pop_back();
  }

  QACertificate node;
  node.link = pretzel_node(s);
  std::ostringstream desc;
  desc << "a crossing in the tassle with -" << qm << " half-twists";
  node.crossing = desc.str();
  node.child0 = std::make_unique<QACertificate>(build_rec(sorted_spec(l0)));
  node.child1 = std::make_unique<QACertificate>(build_rec(sorted_spec(l1)));
  internal_check(node.link.det == node.child0->link.det + node.child1->link.det,
                 "resolution determinants must add up to the parent determinant");
  internal_check(node.link.det > 0 && node.child0->link.det > 0 && node.child1->link.det > 0,
                 "resolution determinants must be positive");
  return node;
}

}  // namespace

Classification classify(PretzelSpec s) {
  s = sorted_spec(std::move(s));
  Clause c = decide(s);
  Classification out;
  out.verdict = clause_is_qa(c) ? Verdict::QA : Verdict::NOT_QA;
  out.case_tag = clause_tag(c, s);
  out.det = pretzel_determinant(s);
  out.det_positive = out.det > 0;
  if (c == Clause::DEGENERATE)
    out.note =
        "empty parameter lists describe an unknot/unlink corner; treated as "
        "quasi-alternating by convention";
  if (!out.det_positive) {
    if (!out.note.empty()) out.note += "; ";
    out.note +=
        "the determinant formula value is not positive and is reported as-is "
        "(no absolute value is taken)";
  }
  if (c == Clause::CASE1 || c == Clause::CASE2)
    out.certificate = std::make_shared<const QACertificate>(build_rec(s));
  return out;
}

QACertificate build_certificate(PretzelSpec s) {
  s = sorted_spec(std::move(s));
  Clause c = decide(s);
  if (c != Clause::CASE1 && c != Clause::CASE2)
    throw std::runtime_error("no constructive certificate path for this case");
  return build_rec(s);
}

namespace {

bool fail(VerifyResult& r, const std::string& path, const std::string& reason) {
  r.ok = false;
  r.failing_path = path;
  r.reason = reason;
  return false;
}

bool verify_rec(const QACertificate& c, const std::string& path, VerifyResult& r) {
  const LinkNode& link = c.link;
  if (link.kind != LinkKind::UNKNOT) {
    if (!link.spec) return fail(r, path, "non-unknot node is missing its parameters");
    try {
      validate_pretzel(*link.spec);
    } catch (const std::invalid_argument& e) {
      return fail(r, path, e.what());
    }
    if (pretzel_determinant(*link.spec) != link.det)
      return fail(r, path, "stored determinant does not match the determinant formula");
  }
  if (c.is_leaf()) {
    switch (link.kind) {
      case LinkKind::UNKNOT:
        if (link.det != 1) return fail(r, path, "unknot leaf must have determinant 1");
        return true;
      case LinkKind::ALTERNATING_FORM:
        if (link.det <= 0)
          return fail(r, path, "alternating-form leaf determinant must be positive");
        if (link.montesinos != montesinos_description(*link.spec))
          return fail(r, path, "alternating-form description does not match the parameters");
        return true;
      case LinkKind::PRETZEL: {
        if (link.det <= 0) return fail(r, path, "pretzel leaf determinant must be positive");
        Classification cl = classify(*link.spec);
        if (cl.verdict != Verdict::QA)
          return fail(r, path, "pretzel leaf does not classify as quasi-alternating");
        return true;
      }
    }
    return fail(r, path, "unknown leaf kind");
  }
  if (!c.child0 || !c.child1)
    return fail(r, path, "internal node must have exactly two resolutions");
  const Int& d = link.det;
  const Int& d0 = c.child0->link.det;
  const Int& d1 = c.child1->link.det;
  if (d <= 0 || d0 <= 0 || d1 <= 0)
    return fail(r, path, "determinants at an internal node must all be positive");
  if (d != d0 + d1)
    return fail(r, path, "determinant additivity det(L) = det(L0) + det(L1) fails");
  return verify_rec(*c.child0, path + ".0", r) && verify_rec(*c.child1, path + ".1", r);
}

}  // namespace

VerifyResult verify_certificate_detail(const QACertificate& c) {
  VerifyResult r;
  verify_rec(c, "root", r);
  return r;
}

bool verify_certificate(const QACertificate& c) { return verify_certificate_detail(c).ok; }

namespace {

struct NormalForm {
  bool ok = false;
  PretzelSpec spec;
};

// Direct reading of (e, entries): positives become p, entries <= -3 become q,
// and each -2 is traded against the twist parameter while e >= 1.
NormalForm try_normalize(int e, const std::vector<int>& entries) {
  NormalForm out;
  int twos = 0;
  for (int v : entries) {
    if (v >= 2)
      out.spec.p.push_back(v);
    else if (v <= -3)
      out.spec.q.push_back(-v);
    else
      twos++;  // v == -2
  }
  while (twos > 0 && e >= 1) {
    e--;
    twos--;
    out.spec.p.push_back(2);
  }
  if (twos > 0 || e < 0) return out;
  out.spec.e = e;
  std::sort(out.spec.p.begin(), out.spec.p.end());
  std::sort(out.spec.q.begin(), out.spec.q.end());
  out.ok = true;
  return out;
}

}  // namespace

NormalizedPretzel normalize_pretzel(const std::vector<int>& raw, std::optional<int> e) {
  for (int v : raw) {
    if (v == 0) throw std::invalid_argument("pretzel parameters must be nonzero");
    if (v == 1 || v == -1) throw std::invalid_argument("reduce the diagram first");
  }
  int e0 = e.value_or(0);
  NormalForm direct = try_normalize(e0, raw);
  if (direct.ok) return NormalizedPretzel{direct.spec, false};
  std::vector<int> neg(raw);
  for (int& v : neg) v = -v;
  NormalForm mirrored = try_normalize(-e0, neg);
  if (mirrored.ok) return NormalizedPretzel{mirrored.spec, true};
  throw std::invalid_argument(
      "pretzel does not normalize to P(-e; p's, -q's) form in either orientation");
}

ParsedPretzel parse_pretzel(const std::string& text) {
  auto syntax_error = [&](const std::string& why) {
    return std::invalid_argument("pretzel syntax error: " + why +
                                 " (expected P(a1,a2,...) or P(-e; a1,a2,...))");
  };
  size_t i = 0, n = text.size();
  auto skip_ws = [&] {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) i++;
  };
  skip_ws();
  if (i >= n || (text[i] != 'P' && text[i] != 'p')) throw syntax_error("missing leading P");
  i++;
  skip_ws();
  if (i >= n || text[i] != '(') throw syntax_error("missing opening parenthesis");
  i++;
  size_t close = text.rfind(')');
  if (close == std::string::npos || close < i) throw syntax_error("missing closing parenthesis");
  for (size_t j = close + 1; j < n; j++)
    if (!std::isspace(static_cast<unsigned char>(text[j])))
      throw syntax_error("trailing characters after the closing parenthesis");
  std::string inside = text.substr(i, close - i);

  auto parse_int = [&](const std::string& token) {
    size_t a = 0, b = token.size();
    while (a < b && std::isspace(static_cast<unsigned char>(token[a]))) a++;
    while (b > a && std::isspace(static_cast<unsigned char>(token[b - 1]))) b--;
    std::string t = token.substr(a, b - a);
    if (t.empty()) throw syntax_error("empty parameter");
    size_t pos = 0;
    int value = 0;
    try {
      value = std::stoi(t, &pos);
    } catch (const std::exception&) {
      throw syntax_error("'" + t + "' is not an integer");
    }
    if (pos != t.size()) throw syntax_error("'" + t + "' is not an integer");
    return value;
  };

  ParsedPretzel out;
  std::string list = inside;
  size_t semi = inside.find(';');
  if (semi != std::string::npos) {
    if (inside.find(';', semi + 1) != std::string::npos)
      throw syntax_error("more than one ';'");
    // leading value is -e
    out.e = -parse_int(inside.substr(0, semi));
    list = inside.substr(semi + 1);
  }
  bool blank = true;
  for (char ch : list)
    if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
  if (!blank) {
    std::string token;
    std::istringstream stream(list);
    while (std::getline(stream, token, ',')) out.raw.push_back(parse_int(token));
  }
  out.normalized = normalize_pretzel(out.raw, out.e);
  return out;
}

namespace {

using nlohmann::json;

json node_to_json(const QACertificate& c) {
  json j;
  switch (c.link.kind) {
    case LinkKind::UNKNOT:
      j["kind"] = "unknot";
      break;
    case LinkKind::PRETZEL:
      j["kind"] = "pretzel";
      break;
    case LinkKind::ALTERNATING_FORM:
      j["kind"] = "alternating_form";
      break;
  }
  if (c.link.spec) {
    j["e"] = c.link.spec->e;
    j["p"] = c.link.spec->p;
    j["q"] = c.link.spec->q;
  }
  if (c.link.kind == LinkKind::ALTERNATING_FORM) j["montesinos"] = c.link.montesinos;
  j["det"] = c.link.det.get_str();
  if (!c.is_leaf()) {
    j["crossing"] = c.crossing;
    j["resolution0"] = node_to_json(*c.child0);
    j["resolution1"] = node_to_json(*c.child1);
  }
  return j;
}

QACertificate node_from_json(const json& j) {
  auto bad = [](const std::string& why) {
    return std::runtime_error("certificate parse error: " + why);
  };
  if (!j.is_object()) throw bad("node is not an object");
  QACertificate c;
  std::string kind = j.value("kind", "");
  if (kind == "unknot")
    c.link.kind = LinkKind::UNKNOT;
  else if (kind == "pretzel")
    c.link.kind = LinkKind::PRETZEL;
  else if (kind == "alternating_form")
    c.link.kind = LinkKind::ALTERNATING_FORM;
  else
    throw bad("unknown node kind '" + kind + "'");
  if (c.link.kind != LinkKind::UNKNOT) {
    if (!j.contains("e") || !j.contains("p") || !j.contains("q"))
      throw bad("pretzel parameters e/p/q are required for non-unknot nodes");
    PretzelSpec s;
    s.e = j.at("e").get<int>();
    s.p = j.at("p").get<std::vector<int>>();
    s.q = j.at("q").get<std::vector<int>>();
    c.link.spec = std::move(s);
  }
  if (c.link.kind == LinkKind::ALTERNATING_FORM) {
    if (!j.contains("montesinos")) throw bad("alternating_form node needs a montesinos field");
    c.link.montesinos = j.at("montesinos").get<std::string>();
  }
  if (!j.contains("det")) throw bad("node is missing its determinant");
  const json& d = j.at("det");
  if (d.is_string()) {
    try {
      c.link.det = Int(d.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw bad("determinant '" + d.get<std::string>() + "' is not a decimal integer");
    }
  } else if (d.is_number_integer()) {
    c.link.det = Int(static_cast<long>(d.get<long long>()));
  } else {
    throw bad("determinant must be a decimal string or integer");
  }
  bool has0 = j.contains("resolution0"), has1 = j.contains("resolution1");
  if (has0 != has1) throw bad("internal nodes need both resolution0 and resolution1");
  if (has0) {
    c.crossing = j.value("crossing", "");
    c.child0 = std::make_unique<QACertificate>(node_from_json(j.at("resolution0")));
    c.child1 = std::make_unique<QACertificate>(node_from_json(j.at("resolution1")));
  }
  return c;
}

}  // namespace

std::string certificate_to_json(const QACertificate& c) {
  json j;
  j["format"] = "qa-certificate";
  j["version"] = 1;
  j["root"] = node_to_json(c);
  return j.dump(2) + "\n";
}

QACertificate certificate_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("certificate parse error: ") + e.what());
  }
  if (!j.is_object() || j.value("format", "") != "qa-certificate")
    throw std::runtime_error("certificate parse error: not a qa-certificate document");
  if (j.value("version", 0) != 1)
    throw std::runtime_error("certificate parse error: unsupported version");
  if (!j.contains("root"))
    throw std::runtime_error("certificate parse error: missing root node");
  return node_from_json(j.at("root"));
}

}  // namespace qalat
