#include "galg/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "galg/fdmod.hpp"

namespace galg {

namespace {

struct Session {
  Field field = Field::rationals();
  RewriteOptions opts;
  bool machine = false;
  std::ostream* out = nullptr;

  // Human reports use "key: value"; machine mode key=value with
  // underscore keys.
  void kv(const std::string& key, const std::string& value) const {
    if (machine) {
      std::string k = key;
      for (char& ch : k)
        if (ch == '-' || ch == ' ') ch = '_';
      *out << k << "=" << value << "\n";
    } else {
      *out << key << ": " << value << "\n";
    }
  }
  void line(const std::string& key, const std::string& bare) const {
    if (machine)
      kv(key, bare);
    else
      *out << bare << "\n";
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Field parse_field_flag(const std::string& s) {
  if (s == "rational") return Field::rationals();
  if (s.rfind("prime:", 0) == 0) {
    const std::string digits = s.substr(6);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("field modulus must be a positive integer: " + s);
    try {
      return Field::prime(std::stol(digits));
    } catch (const std::exception& e) {
      throw ParseError(e.what());
    }
  }
  throw ParseError("unknown field '" + s + "'; use rational or prime:p");
}

std::string word_names(const GPresentation& p, const Word& w) {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += "*";
    s += p.letter_name(w[i]);
  }
  return s;
}

// Loads a presentation, certifies its rewriting system, and emits the
// report header. Returns the handle; a failed certificate is reported with
// its overlap witnesses and signalled via the flag.
PresHandle load_certified(const Session& ses, const std::string& path, bool& certified) {
  GPresentation p = parse_presentation(read_file(path), ses.field);
  auto sh = std::make_shared<const GPresentation>(std::move(p));
  ConfluenceReport rep = certify_confluence(sh, ses.opts);
  ses.kv("field", ses.field.describe());
  ses.kv("degree-cap", std::to_string(ses.opts.degree_cap));
  ses.kv("confluence", rep.certified ? "certified" : "failed");
  certified = rep.certified;
  if (!rep.certified)
    for (const auto& fail : rep.failures) {
      ses.kv("overlap", word_names(*sh, fail.overlap));
      ses.kv("left", print_element(fail.left));
      ses.kv("right", print_element(fail.right));
    }
  return sh;
}

void print_module_dims(const Session& ses, const GradedModule& m) {
  GradedModule t = trim_module(m);
  ses.kv("start", std::to_string(t.dims.empty() ? 0 : t.lo));
  std::string ds;
  if (t.dims.empty()) {
    ds = "0";
  } else {
    for (size_t i = 0; i < t.dims.size(); ++i) {
      if (i) ds += " ";
      ds += std::to_string(t.dims[i]);
    }
  }
  ses.kv("dims", ds);
  ses.kv("total", std::to_string(t.total_dim()));
}

int cmd_nf(const Session& ses, const std::string& file, const std::string& element) {
  bool certified = false;
  PresHandle p = load_certified(ses, file, certified);
  if (!certified) return 4;
  NCElement e = parse_element(p, element, ses.opts);
  ses.line("nf", print_element(e));
  return 0;
}

int cmd_shriek(const Session& ses, const std::string& file, bool constants) {
  bool certified = false;
  PresHandle p = load_certified(ses, file, certified);
  if (!certified) return 4;
  ShriekHandle b = build_shriek(*p, ses.opts);
  std::string ds, split;
  for (int d = 0; d <= b->top; ++d) {
    if (d) {
      ds += " ";
      split += " ";
    }
    ds += std::to_string(b->dim(d));
    split += std::to_string(b->zfree[d].size()) + "+" + std::to_string(b->ztail[d].size());
  }
  ses.kv("dims", ds);
  ses.kv("split", split);
  if (constants) {
    for (int d = 0; d <= b->top; ++d) {
      std::string bs;
      for (int i = 0; i < b->dim(d); ++i) {
        if (i) bs += " ";
        bs += b->word_name(b->basis[d][i]);
      }
      ses.kv("basis " + std::to_string(d), bs);
    }
    for (const auto& row : b->relations2) ses.kv("relation", relation_string(*b, row));
  }
  return 0;
}

int cmd_nakayama(const Session& ses, const std::string& file, const std::string& scale) {
  bool certified = false;
  PresHandle p = load_certified(ses, file, certified);
  if (!certified) return 4;
  ShriekHandle b = build_shriek(*p, ses.opts);
  NakayamaMap s = scale.empty() ? nakayama(b) : nakayama(b, ses.field.parse(scale));
  auto yn = [](bool v) { return v ? "yes" : "no"; };
  if (ses.machine) {
    ses.kv("automorphism", yn(s.is_automorphism));
    ses.kv("preserves-c", yn(s.preserves_c_sub));
    ses.kv("z-scaling", yn(s.z_scaling));
  } else {
    *ses.out << "automorphism: " << yn(s.is_automorphism) << ", preserves C!: "
             << yn(s.preserves_c_sub) << ", sigma(z)=k*z: " << yn(s.z_scaling) << "\n";
  }
  ses.kv("k", s.z_scale.str());
  for (size_t d = 0; d < s.sigma.size(); ++d)
    ses.kv("sigma " + std::to_string(d), matrix_literal(s.sigma[d]));
  return s.certified() ? 0 : 5;
}

struct LoadedModule {
  ShriekHandle full;
  ShriekHandle handle;  // full or slice, per the file header
  GradedModule mod;
  bool over_c = false;
};

LoadedModule load_module(const Session& ses, const std::string& path, bool& certified) {
  std::string text = read_file(path);
  ModuleHeader h = module_file_header(text);
  std::filesystem::path alg_path = std::filesystem::path(path).parent_path() / h.algebra;
  PresHandle p = load_certified(ses, alg_path.string(), certified);
  LoadedModule lm;
  if (!certified) return lm;
  lm.full = build_shriek(*p, ses.opts);
  lm.over_c = h.over_c;
  lm.handle = h.over_c ? c_subalgebra(lm.full) : lm.full;
  lm.mod = parse_module(text, lm.handle);
  return lm;
}

int cmd_module(const Session& ses, const std::string& sub, const std::string& file, int steps) {
  bool certified = false;
  LoadedModule lm = load_module(ses, file, certified);
  if (!certified) return 4;
  auto violations = check_module(lm.mod);
  if (!violations.empty()) {
    for (const auto& v : violations) ses.kv("violation", v);
    return 6;
  }
  if (sub == "check") {
    ses.kv("relations", "ok");
    print_module_dims(ses, lm.mod);
    return 0;
  }
  if (sub == "resolve") {
    ResolutionData res = resolve(lm.mod, steps);
    for (size_t i = 0; i < res.steps.size(); ++i) {
      std::string degrees;
      for (size_t j = 0; j < res.steps[i].gen_degrees.size(); ++j) {
        if (j) degrees += " ";
        degrees += std::to_string(res.steps[i].gen_degrees[j]);
      }
      ses.kv("step " + std::to_string(i),
             "rank " + std::to_string(res.steps[i].gen_degrees.size()) +
                 (degrees.empty() ? "" : ", degrees " + degrees));
    }
    ses.kv("minimal", res.minimal ? "yes" : "no");
    return 0;
  }
  if (sub == "ext") {
    auto table = ext_dims(lm.mod, steps);
    std::string totals;
    for (size_t i = 0; i < table.size(); ++i) {
      if (i) totals += " ";
      totals += std::to_string(table[i].total);
    }
    ses.line("ext", totals);
    for (const auto& row : table) {
      std::string degrees;
      for (size_t j = 0; j < row.degrees.size(); ++j) {
        if (j) degrees += " ";
        degrees += std::to_string(row.degrees[j]);
      }
      ses.kv("step " + std::to_string(row.step),
             "total " + std::to_string(row.total) +
                 (degrees.empty() ? "" : ", degrees " + degrees));
    }
    return 0;
  }
  if (sub == "induce") {
    if (!lm.over_c) throw Error("module induce expects a module declared over C!");
    GradedModule ind = induce(lm.full, lm.mod);
    ses.kv("certified", "yes");
    print_module_dims(ses, ind);
    return 0;
  }
  if (sub == "restrict") {
    if (lm.over_c) throw Error("module restrict expects a module declared over B!");
    GradedModule r = restrict_to_c(lm.mod);
    ses.kv("over", "C!");
    print_module_dims(ses, r);
    return 0;
  }
  if (sub == "flocal") {
    if (lm.over_c) throw Error("module flocal expects a module declared over B!");
    ses.kv("F-local", is_f_local(lm.mod) ? "yes" : "no");
    return 0;
  }
  if (sub == "twist") {
    if (lm.over_c) throw Error("module twist expects a module declared over B!");
    NakayamaMap s = nakayama(lm.full);
    if (!s.certified()) {
      ses.kv("nakayama", "uncertified");
      return 5;
    }
    GradedModule t = twist_by_nakayama(lm.mod, s);
    auto tv = check_module(t);
    if (!tv.empty()) {
      for (const auto& v : tv) ses.kv("violation", v);
      return 6;
    }
    ses.kv("k", s.z_scale.str());
    ses.kv("relations", "ok");
    print_module_dims(ses, t);
    return 0;
  }
  throw Error("unknown module subcommand: " + sub);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"workbench for homogeneous G-algebras and their Koszul duals"};
  app.require_subcommand(1);

  std::string field_str = "rational";
  int degree_cap = 24;
  int steps = 4;
  bool machine = false;
  app.add_option("--field", field_str, "rational or prime:p");
  app.add_option("--degree-cap", degree_cap, "rewriting degree cap");
  app.add_option("--steps", steps, "resolution steps");
  app.add_flag("--machine", machine, "line-oriented key=value output");

  std::string nf_file, nf_element;
  CLI::App* nf = app.add_subcommand("nf", "normal form of an element");
  nf->add_option("presentation", nf_file)->required();
  nf->add_option("element", nf_element)->required();
  nf->fallthrough();

  std::string shriek_file;
  bool constants = false;
  CLI::App* shr = app.add_subcommand("shriek", "build the quadratic dual");
  shr->add_option("presentation", shriek_file)->required();
  shr->add_flag("--constants", constants, "print basis words and relations");
  shr->fallthrough();

  std::string nak_file, socle_scale;
  CLI::App* nak = app.add_subcommand("nakayama", "solve the Nakayama automorphism");
  nak->add_option("presentation", nak_file)->required();
  nak->add_option("--socle-scale", socle_scale, "rescale the socle functional");
  nak->fallthrough();

  CLI::App* mod = app.add_subcommand("module", "graded module operations");
  mod->require_subcommand(1);
  mod->fallthrough();
  std::map<std::string, std::string> mod_files;
  std::vector<std::string> subs = {"check", "resolve", "ext", "induce", "restrict", "flocal",
                                   "twist"};
  std::map<std::string, CLI::App*> mod_subs;
  for (const auto& name : subs) {
    CLI::App* s = mod->add_subcommand(name);
    s->add_option("module-file", mod_files[name])->required();
    s->fallthrough();
    mod_subs[name] = s;
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  }

  Session ses;
  ses.machine = machine;
  ses.out = &out;
  try {
    ses.field = parse_field_flag(field_str);
    if (degree_cap < 1) throw ParseError("degree cap must be positive");
    if (steps < 0) throw ParseError("steps must be nonnegative");
    ses.opts.degree_cap = degree_cap;

    if (nf->parsed()) return cmd_nf(ses, nf_file, nf_element);
    if (shr->parsed()) return cmd_shriek(ses, shriek_file, constants);
    if (nak->parsed()) return cmd_nakayama(ses, nak_file, socle_scale);
    if (mod->parsed())
      for (const auto& name : subs)
        if (mod_subs[name]->parsed()) return cmd_module(ses, name, mod_files[name], steps);
    out << "error: no command\n";
    return 2;
  } catch (const ParseError& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  } catch (const FlavorError& e) {
    out << "error: " << e.what() << "\n";
    return 3;
  } catch (const DegreeCapError& e) {
    out << "error: " << e.what() << "\n";
    return 3;
  } catch (const ConfluenceError& e) {
    out << "error: " << e.what() << "\n";
    return 4;
  } catch (const NakayamaCertError& e) {
    out << "error: " << e.what() << "\n";
    return 5;
  } catch (const ModuleCertError& e) {
    out << "error: " << e.what() << "\n";
    for (const auto& v : e.violations) ses.kv("violation", v);
    return 6;
  } catch (const Error& e) {
    out << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    out << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace galg
