// Command-line front end: obstruct / classify / dinv / certify.
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qalat/dinv.hpp"
#include "qalat/graph.hpp"
#include "qalat/obstruction.hpp"
#include "qalat/plumbing.hpp"
#include "qalat/pretzel.hpp"

using json = nlohmann::ordered_json;
using namespace qalat;

namespace {

constexpr int kSchemaVersion = 1;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  long long ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

json json_int(const Int& z) {
  if (z.fits_slong_p()) return json(static_cast<long long>(z.get_si()));
  return json(z.get_str());
}

json json_int_vector(const std::vector<Int>& v) {
  json out = json::array();
  for (const Int& z : v) out.push_back(json_int(z));
  return out;
}

json json_matrix(const IntMat& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows; r++) {
    json row = json::array();
    for (int c = 0; c < m.cols; c++) row.push_back(json_int(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json json_embedding(const Embedding& emb) {
  json j;
  j["ambient_rank"] = emb.ambient_rank;
  j["matrix"] = json_matrix(emb.matrix);
  return j;
}

json json_witness(const AdmissibilityWitness& w) {
  json j;
  j["columns"] = w.columns;
  j["rows"] = w.rows;
  j["minor_det"] = w.minor_det.get_str();
  return j;
}

std::string format_matrix_rows(const IntMat& m) {
  std::ostringstream out;
  for (int r = 0; r < m.rows; r++) {
    out << "    [";
    for (int c = 0; c < m.cols; c++) out << " " << m(r, c).get_str();
    out << " ]\n";
  }
  return out.str();
}

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream out;
  for (size_t i = 0; i < v.size(); i++) out << (i ? "," : "") << v[i];
  return out.str();
}

std::string spec_text(const PretzelSpec& s) {
  std::ostringstream out;
  out << "e = " << s.e << ", p = (" << join_ints(s.p) << "), q = (" << join_ints(s.q) << ")";
  return out.str();
}

json spec_json(const PretzelSpec& s) {
  json j;
  j["e"] = s.e;
  j["p"] = s.p;
  j["q"] = s.q;
  return j;
}

struct GraphInput {
  WeightedGraph g;
  std::string text;  // one-line description
  json desc;
};

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::istringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(token, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != token.size())
      throw std::invalid_argument(what + ": '" + token + "' is not an integer");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument(what + ": empty list");
  return out;
}

GraphInput builtin_graph(const std::string& name) {
  GraphInput in;
  if (name == "11n50") {
    in.g = graph_11n50();
    in.text = "builtin 11n50";
    in.desc["kind"] = "builtin";
    in.desc["name"] = name;
    return in;
  }
  auto generator = [&](const std::string& args, bool mirror) {
    size_t colon = args.rfind(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("builtin generator syntax: " +
                                  std::string(mirror ? "mirror-pretzel" : "pretzel") +
                                  ":p1,p2,...:q");
    std::vector<int> p = parse_int_list(args.substr(0, colon), "p list");
    std::vector<int> q = parse_int_list(args.substr(colon + 1), "q value");
    if (q.size() != 1) throw std::invalid_argument("exactly one q value is required");
    in.g = mirror ? mirror_pretzel_plumbing(p, q[0]) : pretzel_plumbing(p, q[0]);
    in.text = "builtin " + name;
    in.desc["kind"] = "builtin";
    in.desc["name"] = name;
    return in;
  };
  if (name.rfind("pretzel:", 0) == 0) return generator(name.substr(8), false);
  if (name.rfind("mirror-pretzel:", 0) == 0) return generator(name.substr(15), true);
  throw std::invalid_argument("unknown builtin '" + name +
                              "' (available: 11n50, pretzel:p1,...:q, mirror-pretzel:p1,...:q)");
}

GraphInput file_graph(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::invalid_argument("cannot open graph file '" + path + "'");
  GraphInput in;
  in.g = parse_graph(file);
  in.text = "file " + path;
  in.desc["kind"] = "file";
  in.desc["path"] = path;
  return in;
}

GraphInput pretzel_graph(const std::string& text) {
  ParsedPretzel parsed = parse_pretzel(text);
  const PretzelSpec& s = parsed.normalized.spec;
  if (s.e != 0 || s.q.size() != 1)
    throw std::invalid_argument(
        "--pretzel requires a pretzel that normalizes to P(p_1,...,p_n, -q) "
        "(e = 0 and exactly one negative tassle); got " +
        spec_text(s));
  GraphInput in;
  in.g = pretzel_plumbing(s.p, s.q[0]);
  in.text = "pretzel " + text + " (" + spec_text(s) +
            (parsed.normalized.mirrored ? ", mirrored)" : ")");
  in.desc["kind"] = "pretzel";
  in.desc["text"] = text;
  in.desc["normalized"] = spec_json(s);
  in.desc["mirrored"] = parsed.normalized.mirrored;
  return in;
}

void finish_graph_desc(GraphInput& in) {
  in.text += " (" + std::to_string(in.g.size()) + " vertices, " +
             std::to_string(in.g.edges.size()) + " edges)";
  in.desc["vertices"] = in.g.size();
  in.desc["edges"] = static_cast<int>(in.g.edges.size());
}

void emit(const std::string& s) { std::cout << s << std::flush; }

// ---------------------------------------------------------------- obstruct

int run_obstruct(const GraphInput& input, const SearchBudget& budget, const std::string& format) {
  Timer timer;
  ObstructionVerdict v = qa_obstruction(input.g, budget);
  long long ms = timer.ms();

  std::string interpretation;
  switch (v.status) {
    case ObstructionStatus::OBSTRUCTED:
      interpretation =
          "every embedding of the lattice into -Z^n up to the completeness bound fails "
          "the minor condition; the orientation reverse of the plumbing boundary bounds "
          "no negative definite form with torsion-free H1, so a link with that branched "
          "double cover is not quasi-alternating";
      break;
    case ObstructionStatus::NOT_OBSTRUCTED:
      interpretation =
          "an admissible embedding exists, so this obstruction is silent; NOT_OBSTRUCTED "
          "does not mean the link is quasi-alternating";
      break;
    case ObstructionStatus::INCONCLUSIVE:
      interpretation = "the obstruction could not be decided: " + v.reason;
      break;
  }

  if (format == "json") {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "obstruct";
    j["input"] = input.desc;
    j["budget"]["node_limit"] = budget.node_limit;
    j["budget"]["solution_limit"] = budget.solution_limit;
    j["budget"]["max_ambient_rank"] = budget.max_ambient_rank;
    j["rank"] = v.rank;
    j["discriminant"] = v.discriminant.get_str();
    j["completeness_bound"] = v.bound.get_str();
    j["verdict"] = to_string(v.status);
    j["reason"] = v.reason;
    j["search_complete"] = v.search_complete;
    j["nodes"] = v.nodes;
    json ev = json::array();
    for (const auto& e : v.evidence) {
      json row;
      row["ambient_rank"] = e.ambient_rank;
      row["classes"] = e.classes;
      row["admissible"] = e.admissible;
      ev.push_back(std::move(row));
    }
    j["evidence"] = std::move(ev);
    json classes = json::array();
    for (const auto& c : v.classes) {
      json row;
      row["nonzero_rows"] = c.nonzero_rows;
      row["admissible"] = c.admissible;
      row["matrix"] = json_matrix(restrict_ambient(c.emb, c.nonzero_rows).matrix);
      classes.push_back(std::move(row));
    }
    j["classes"] = std::move(classes);
    j["witness"] = v.witness ? json_witness(*v.witness) : json(nullptr);
    j["admissible_embedding"] =
        v.admissible_embedding ? json_embedding(*v.admissible_embedding) : json(nullptr);
    j["interpretation"] = interpretation;
    j["timing_ms"] = ms;
    emit(j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "command: obstruct\n";
    out << "input: " << input.text << "\n";
    out << "rank: " << v.rank << "\n";
    out << "discriminant: " << v.discriminant.get_str() << "\n";
    out << "completeness bound: " << v.bound.get_str() << "\n";
    out << "verdict: " << to_string(v.status) << "\n";
    if (!v.reason.empty()) out << "reason: " << v.reason << "\n";
    out << "search: " << (v.search_complete ? "complete" : "stopped early") << ", " << v.nodes
        << " nodes\n";
    if (!v.evidence.empty()) {
      out << "embedding classes by ambient rank:\n";
      for (const auto& e : v.evidence)
        out << "  n = " << e.ambient_rank << ": " << e.classes << " class(es), " << e.admissible
            << " admissible\n";
    }
    if (!v.classes.empty()) {
      out << "classes at the searched rank (up to symmetry, zero rows trimmed):\n";
      int index = 0;
      for (const auto& c : v.classes) {
        out << "  class " << ++index << " (" << c.nonzero_rows << " nonzero rows, "
            << (c.admissible ? "admissible" : "inadmissible") << "):\n";
        out << format_matrix_rows(restrict_ambient(c.emb, c.nonzero_rows).matrix);
      }
    }
    if (v.witness) {
      out << "witness: columns {" << join_ints(v.witness->columns) << "} supported in rows {"
          << join_ints(v.witness->rows) << "}, minor determinant "
          << v.witness->minor_det.get_str() << "\n";
    }
    if (v.admissible_embedding) {
      out << "admissible embedding (ambient rank " << v.admissible_embedding->ambient_rank
          << "):\n"
          << format_matrix_rows(v.admissible_embedding->matrix);
    }
    out << "interpretation: " << interpretation << "\n";
    out << "timing: " << ms << " ms\n";
    emit(out.str());
  }
  return v.status == ObstructionStatus::INCONCLUSIVE ? 2 : 0;
}

// ---------------------------------------------------------------- classify

int run_classify(const std::string& text, const std::string& format,
                 const std::string& certificate_out) {
  Timer timer;
  ParsedPretzel parsed = parse_pretzel(text);
  Classification cl = classify(parsed.normalized.spec);
  long long ms = timer.ms();

  std::string mirror_note;
  if (parsed.normalized.mirrored)
    mirror_note =
        "the input was mirrored to reach the normal form; the verdict is stated for the "
        "mirror image, and mirroring preserves quasi-alternating-ness";

  if (!certificate_out.empty() && cl.certificate) {
    std::ofstream file(certificate_out);
    if (!file) throw std::invalid_argument("cannot write certificate file '" + certificate_out + "'");
    file << certificate_to_json(*cl.certificate);
  }

  if (format == "json") {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "classify";
    j["input"] = text;
    j["raw"] = parsed.raw;
    j["explicit_twist"] = parsed.e ? json(*parsed.e) : json(nullptr);
    j["normalized"] = spec_json(parsed.normalized.spec);
    j["mirrored"] = parsed.normalized.mirrored;
    j["verdict"] = to_string(cl.verdict);
    j["case"] = cl.case_tag;
    j["determinant"] = cl.det.get_str();
    j["determinant_positive"] = cl.det_positive;
    std::string note = cl.note;
    if (!mirror_note.empty()) note = note.empty() ? mirror_note : note + "; " + mirror_note;
    j["note"] = note;
    j["certificate"] =
        cl.certificate ? json::parse(certificate_to_json(*cl.certificate)) : json(nullptr);
    j["timing_ms"] = ms;
    emit(j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "command: classify\n";
    out << "input: " << text << "\n";
    out << "normalized: " << spec_text(parsed.normalized.spec)
        << (parsed.normalized.mirrored ? " (mirrored)" : "") << "\n";
    out << "verdict: " << to_string(cl.verdict) << "\n";
    out << "case: " << cl.case_tag << "\n";
    out << "determinant (formula value): " << cl.det.get_str() << "\n";
    if (!cl.note.empty()) out << "note: " << cl.note << "\n";
    if (!mirror_note.empty()) out << "note: " << mirror_note << "\n";
    if (cl.certificate) {
      VerifyResult check = verify_certificate_detail(*cl.certificate);
      out << "certificate: built and verified (" << (check.ok ? "ok" : "INVALID") << ")";
      if (!certificate_out.empty()) out << ", written to " << certificate_out;
      out << "\n";
    } else {
      out << "certificate: none (this clause carries no constructive certificate)\n";
    }
    out << "timing: " << ms << " ms\n";
    emit(out.str());
  }
  return 0;
}

// ---------------------------------------------------------------- dinv

int run_dinv(const GraphInput& input, bool mirror, const std::string& format) {
  Timer timer;
  CorrectionTable table = correction_terms(input.g, mirror);
  Rat max_d = max_correction_term(table);
  std::optional<bool> quarter;
  if (mirror) quarter = owens_strle_quarter_test(table);
  long long ms = timer.ms();

  if (format == "json") {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "dinv";
    j["input"] = input.desc;
    j["mirror"] = table.mirror;
    j["rank"] = table.rank;
    j["discriminant"] = table.discriminant.get_str();
    j["spin_c_classes"] = static_cast<long long>(table.entries.size());
    json entries = json::array();
    for (const auto& e : table.entries) {
      json row;
      row["residue"] = json_int_vector(e.residue);
      row["rep"] = json_int_vector(e.rep);
      row["argmax"] = json_int_vector(e.argmax);
      row["max_square"] = e.max_sq.get_str();
      row["d"] = e.d.get_str();
      entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    j["max_d"] = max_d.get_str();
    j["quarter_test"] = quarter ? json(*quarter ? "passes" : "fails") : json(nullptr);
    j["caveat"] = table.caveat;
    j["timing_ms"] = ms;
    emit(j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "command: dinv\n";
    out << "input: " << input.text << "\n";
    out << "mirror: " << (table.mirror ? "yes" : "no") << "\n";
    out << "rank: " << table.rank << "\n";
    out << "discriminant: " << table.discriminant.get_str() << "\n";
    out << "spin-c classes: " << table.entries.size() << "\n";
    out << "d-values (class label: d, from max square):\n";
    for (const auto& e : table.entries) {
      out << "  [";
      for (size_t i = 0; i < e.residue.size(); i++)
        out << (i ? "," : "") << e.residue[i].get_str();
      out << "]: d = " << e.d.get_str() << " (max square " << e.max_sq.get_str() << ")\n";
    }
    out << "max d: " << max_d.get_str() << "\n";
    if (quarter) out << "quarter test (max d > 1/4): " << (*quarter ? "passes" : "fails") << "\n";
    out << "caveat: " << table.caveat << "\n";
    out << "timing: " << ms << " ms\n";
    emit(out.str());
  }
  return 0;
}

// ---------------------------------------------------------------- certify

int run_certify(const std::string& path, const std::string& format) {
  Timer timer;
  std::ifstream file(path);
  if (!file) throw std::invalid_argument("cannot open certificate file '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  QACertificate cert = certificate_from_json(buffer.str());
  VerifyResult result = verify_certificate_detail(cert);
  long long ms = timer.ms();

  if (format == "json") {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "certify";
    j["file"] = path;
    j["result"] = result.ok ? "PASS" : "FAIL";
    j["failing_path"] = result.failing_path;
    j["reason"] = result.reason;
    j["timing_ms"] = ms;
    emit(j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    if (result.ok)
      out << "PASS\n";
    else
      out << "FAIL at " << result.failing_path << ": " << result.reason << "\n";
    emit(out.str());
  }
  return result.ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasi-alternating link obstruction and plumbing invariant toolkit"};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  // obstruct
  auto* obstruct = app.add_subcommand(
      "obstruct", "decide whether the plumbing lattice admits an admissible embedding");
  obstruct->fallthrough();
  std::string ob_graph, ob_builtin, ob_pretzel;
  SearchBudget budget;
  auto* og = obstruct->add_option("--graph", ob_graph, "graph file (v/e line format)");
  auto* ob = obstruct->add_option("--builtin", ob_builtin,
                                  "builtin graph: 11n50, pretzel:p1,...:q, mirror-pretzel:p1,...:q");
  auto* op = obstruct->add_option("--pretzel", ob_pretzel,
                                  "pretzel string P(p1,...,pn,-q) routed through its plumbing");
  og->excludes(ob)->excludes(op);
  ob->excludes(op);
  obstruct->add_option("--node-limit", budget.node_limit, "search node budget")
      ->capture_default_str();
  obstruct->add_option("--solution-limit", budget.solution_limit, "raw solution budget")
      ->capture_default_str();
  obstruct->add_option("--max-rank", budget.max_ambient_rank,
                       "cap on the ambient rank (0 = completeness bound)")
      ->capture_default_str();

  // classify
  auto* cls = app.add_subcommand("classify", "classify a pretzel link as QA / NOT_QA");
  cls->fallthrough();
  std::string cls_input, cls_cert_out;
  cls->add_option("pretzel", cls_input, "pretzel string, e.g. \"P(3,-3,3)\" or \"P(-1; -3,-3)\"")
      ->required();
  cls->add_option("--certificate-out", cls_cert_out, "write the certificate JSON to this file");

  // dinv
  auto* dinv = app.add_subcommand("dinv", "correction terms of the plumbing boundary");
  dinv->fallthrough();
  std::string di_graph, di_builtin;
  bool di_mirror = false;
  auto* dg = dinv->add_option("--graph", di_graph, "graph file (v/e line format)");
  auto* db = dinv->add_option("--builtin", di_builtin,
                              "builtin graph: 11n50, pretzel:p1,...:q, mirror-pretzel:p1,...:q");
  dg->excludes(db);
  dinv->add_flag("--mirror", di_mirror, "reverse the boundary orientation (negate every d)");

  // certify
  auto* certify = app.add_subcommand("certify", "verify a certificate file");
  certify->fallthrough();
  std::string cert_path;
  certify->add_option("file", cert_path, "certificate JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage/parse errors exit 1; --help exits 0
  }

  try {
    if (obstruct->parsed()) {
      GraphInput input;
      if (!ob_graph.empty())
        input = file_graph(ob_graph);
      else if (!ob_builtin.empty())
        input = builtin_graph(ob_builtin);
      else if (!ob_pretzel.empty())
        input = pretzel_graph(ob_pretzel);
      else
        throw std::invalid_argument("one of --graph, --builtin, --pretzel is required");
      finish_graph_desc(input);
      return run_obstruct(input, budget, format);
    }
    if (cls->parsed()) return run_classify(cls_input, format, cls_cert_out);
    if (dinv->parsed()) {
      GraphInput input;
      if (!di_graph.empty())
        input = file_graph(di_graph);
      else if (!di_builtin.empty())
        input = builtin_graph(di_builtin);
      else
        throw std::invalid_argument("one of --graph, --builtin is required");
      finish_graph_desc(input);
      return run_dinv(input, di_mirror, format);
    }
    if (certify->parsed()) return run_certify(cert_path, format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
