// gatforge: define languages as dependently sorted equational theories, check
// them, normalize terms with proof certificates, and discharge the
// per-rule obligations of compiler passes.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gat/corpus.hpp"

using namespace gat;

namespace {

std::string default_corpus_dir() {
  if (const char* env = std::getenv("GATFORGE_CORPUS")) return env;
  return "corpus";
}

// CLI arguments name either a registry block or a corpus file; file paths
// resolve to the block the file's stem names.
Name block_name(const std::string& arg) {
  std::filesystem::path p(arg);
  std::string stem = p.stem().string();
  return stem;
}

int wf_exit(const WfReport& rep, const Name& what) {
  if (rep.ok) {
    std::cout << what << ": ok" << std::endl;
    return 0;
  }
  for (const Diagnostic& d : rep.diagnostics)
    std::cerr << what << ": " << d.where << ": " << d.message << std::endl;
  return 1;
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::endl;
    return;
  }
  std::ofstream out(path);
  out << text << std::endl;
}

struct ReportPrinter {
  std::string json_path;

  int finish(const Name& pass, const DischargeReport& rep) {
    for (const auto& [n, r] : rep.entries) {
      const char* status = r.status == ObStatus::Auto     ? "auto"
                           : r.status == ObStatus::Manual ? "manual"
                                                          : "open";
      std::cout << pass << ": " << n << ": " << status;
      if (r.status == ObStatus::Open && !r.reason.empty()) std::cout << " (" << r.reason << ")";
      std::cout << "\n";
    }
    std::cout << pass << ": " << (rep.clean() ? "clean" : "NOT clean") << std::endl;
    if (!json_path.empty()) write_out(json_path, report_json(pass, rep));
    return rep.clean() ? 0 : 1;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gatforge: equational language definitions and verified-by-construction compiler passes"};
  app.require_subcommand(1);
  std::string corpus_dir = default_corpus_dir();
  app.add_option("--corpus", corpus_dir, "corpus directory (env GATFORGE_CORPUS)");

  std::string arg_lang, arg_term, arg_sort, arg_pass, arg_out, arg_json, arg_proofs;
  std::string arg_g, arg_f, arg_spec, arg_demo;
  int arg_fuel = 0, arg_jobs = 1;
  bool filter_nondup = false;

  auto* c_check = app.add_subcommand("check", "well-formedness of a language");
  c_check->add_option("lang", arg_lang)->required();

  auto* c_elab = app.add_subcommand("elab", "elaborate a closed surface term");
  c_elab->add_option("lang", arg_lang)->required();
  c_elab->add_option("term", arg_term)->required();
  c_elab->add_option("--sort", arg_sort, "expected sort");

  auto* c_norm = app.add_subcommand("normalize", "normalize a closed term, printing the certificate");
  c_norm->add_option("lang", arg_lang)->required();
  c_norm->add_option("term", arg_term)->required();
  c_norm->add_option("--fuel", arg_fuel);
  c_norm->add_flag("--filter-nondup", filter_nondup, "restrict to non-duplicating rules");

  auto* c_compile = app.add_subcommand("compile", "compile a closed term through a pass");
  c_compile->add_option("pass", arg_pass)->required();
  c_compile->add_option("term", arg_term)->required();

  auto* c_obl = app.add_subcommand("obligations", "list the per-rule obligations of a pass");
  c_obl->add_option("pass", arg_pass)->required();
  c_obl->add_option("--json", arg_json);

  auto* c_dis = app.add_subcommand("discharge", "discharge the obligations of a pass");
  c_dis->add_option("pass", arg_pass)->required();
  c_dis->add_option("--proofs", arg_proofs, "extra manual proof file");
  c_dis->add_option("--jobs", arg_jobs);
  c_dis->add_option("--json", arg_json);

  auto* c_compose = app.add_subcommand("compose", "vertical composition g . f");
  c_compose->add_option("g", arg_g)->required();
  c_compose->add_option("f", arg_f)->required();
  c_compose->add_option("-o", arg_out);

  auto* c_concat = app.add_subcommand("concat", "concatenate two passes");
  c_concat->add_option("a", arg_g)->required();
  c_concat->add_option("b", arg_f)->required();
  c_concat->add_option("-o", arg_out);

  auto* c_param = app.add_subcommand("parameterize", "apply a parameterization spec to a language");
  c_param->add_option("spec", arg_spec)->required();
  c_param->add_option("lang", arg_lang)->required();
  c_param->add_option("-o", arg_out);

  auto* c_demo = app.add_subcommand("demo", "run a corpus demo (cps-cross, op-bridge, pipeline, imp-skip)");
  c_demo->add_option("name", arg_demo)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    Corpus corpus = load_corpus(corpus_dir);
    Registry& reg = corpus.reg;

    if (*c_check) {
      Name n = block_name(arg_lang);
      return wf_exit(wf_lang(reg.lang(n).full), n);
    }

    if (*c_elab) {
      const Lang& L = reg.lang(block_name(arg_lang)).full;
      Ctx closed;
      std::optional<Sort> want;
      if (!arg_sort.empty())
        want = elaborate_sort(LangView(L), closed, parse_surface_sort(parse_sexpr(arg_sort)));
      Term t = elaborate(LangView(L), closed, parse_surface(parse_sexpr(arg_term)), want);
      std::cout << print_sexpr(print_term_full(t)) << std::endl;
      return 0;
    }

    if (*c_norm) {
      const Lang& L = reg.lang(block_name(arg_lang)).full;
      Ctx closed;
      Term t = elaborate(LangView(L), closed, parse_surface(parse_sexpr(arg_term)), std::nullopt);
      RewriteConfig cfg =
          filter_nondup ? RewriteConfig::non_duplicating() : RewriteConfig::defaults();
      if (arg_fuel > 0) cfg.fuel = arg_fuel;
      RewriteResult r = normalize(LangView(L), closed, t, cfg);
      std::cout << print_sexpr(print_term_full(r.normal_form)) << "\n";
      std::cout << "; steps " << r.steps_used << (r.fuel_exhausted ? " (fuel exhausted)" : "")
                << "\n";
      std::cout << print_sexpr(print_proof(r.certificate)) << std::endl;
      return r.fuel_exhausted ? 1 : 0;
    }

    if (*c_compile) {
      const CompilerDef& d = reg.compiler(block_name(arg_pass));
      const Lang& S = reg.lang(d.source).full;
      Ctx closed;
      Term t = elaborate(LangView(S), closed, parse_surface(parse_sexpr(arg_term)), std::nullopt);
      std::cout << print_sexpr(print_term_full(compile(d.full, t))) << std::endl;
      return 0;
    }

    if (*c_obl) {
      Name n = block_name(arg_pass);
      auto obls = corpus.pass_obligations(n);
      for (const Obligation& ob : obls) {
        const char* kind = ob.kind == Obligation::Kind::WfSort    ? "wf-sort"
                           : ob.kind == Obligation::Kind::WfTerm  ? "wf-term"
                           : ob.kind == Obligation::Kind::TermEq  ? "term-eq"
                                                                  : "sort-eq";
        std::cout << n << ": " << ob.source_rule << ": " << kind;
        if (ob.kind == Obligation::Kind::TermEq)
          std::cout << " " << show(ob.lhs) << " = " << show(ob.rhs);
        std::cout << "\n";
      }
      std::cout << n << ": " << obls.size() << " obligations" << std::endl;
      return 0;
    }

    if (*c_dis) {
      Name n = block_name(arg_pass);
      const CompilerDef& d = reg.compiler(n);
      auto manual = reg.proofs_for(n);
      if (!arg_proofs.empty()) {
        Loader extra;
        extra.reg = reg;
        if (std::filesystem::is_directory(arg_proofs)) {
          for (const auto& f : std::filesystem::directory_iterator(arg_proofs))
            if (f.path().extension() == ".gatpf") extra.load_file(f.path().string());
        } else {
          extra.load_file(arg_proofs);
        }
        manual = extra.reg.proofs_for(n);
      }
      DischargeReport rep = discharge(corpus.pass_obligations(n), reg.lang(d.target).full, manual,
                                      RewriteConfig::defaults(), arg_jobs);
      ReportPrinter printer{arg_json};
      return printer.finish(n, rep);
    }

    if (*c_compose || *c_concat) {
      const CompilerDef& a = reg.compiler(block_name(arg_g));
      const CompilerDef& b = reg.compiler(block_name(arg_f));
      // concatenation joins a base chain with an extension's own cases
      Compiler out = *c_compose ? vcompose(a.full, b.full) : concat_compilers(a.full, b.ext);
      CompilerDef def;
      def.name = a.name + (*c_compose ? "_o_" : "_cat_") + b.name;
      def.source = *c_compose ? b.source : a.source;
      def.target = *c_compose ? a.target : a.target;
      def.ext = out;
      write_out(arg_out, print_sexpr_pretty(print_compiler(def, LangView(reg.lang(a.target).full))));
      return 0;
    }

    if (*c_param) {
      auto it = reg.paramspecs.find(block_name(arg_spec));
      if (it == reg.paramspecs.end()) throw Error("unknown paramspec: " + arg_spec);
      const LangDef& src = reg.lang(block_name(arg_lang));
      Lang out = parameterize_lang(it->second, src.full);
      if (!it->second.param_lang.empty())
        out = lang_append(reg.lang(it->second.param_lang).full, out);
      WfReport wf = wf_lang(out);
      if (!wf.ok) throw Error("parameterized language is ill-formed: " +
                              wf.diagnostics.front().message);
      LangDef def;
      def.name = src.name + "_p";
      def.ext = out;
      def.full = out;
      write_out(arg_out, print_sexpr_pretty(print_lang(def, LangView(out))));
      return 0;
    }

    if (*c_demo) {
      Ctx closed;
      if (arg_demo == "cps-cross") {
        const Lang& S = corpus.lang("stlc_bool");
        Sort bools = elaborate_sort(LangView(S), closed,
                                    parse_surface_sort(parse_sexpr("(exp (emp) bool)")));
        for (const char* prog : {"(ret (true))", "(ret (false))"}) {
          Term t = elaborate(LangView(S), closed, parse_surface(parse_sexpr(prog)), bools);
          auto [nf, b] = demo_cps_cross(corpus, t);
          std::cout << prog << "  ~>  " << print_sexpr(print_term_full(nf)) << std::endl;
        }
        return 0;
      }
      if (arg_demo == "op-bridge") {
        const Lang& S = corpus.lang("source_full");
        Sort nats = elaborate_sort(LangView(S), closed,
                                   parse_surface_sort(parse_sexpr("(exp (emp) natty)")));
        Term t = elaborate(LangView(S), closed,
                           parse_surface(parse_sexpr("(eadd (ret (nv (s (s (z))))) (ret (nv (s (z)))))")),
                           nats);
        bool ok = demo_op_bridge(corpus, t);
        std::cout << "op-bridge: " << (ok ? "related" : "NOT related") << std::endl;
        return ok ? 0 : 1;
      }
      if (arg_demo == "pipeline") {
        const Lang& S = corpus.lang("source_full");
        Sort bools = elaborate_sort(LangView(S), closed,
                                    parse_surface_sort(parse_sexpr("(exp (emp) bool)")));
        Term t = elaborate(LangView(S), closed, parse_surface(parse_sexpr("(ret (true))")),
                           bools);
        Term out = demo_pipeline(corpus, t);
        std::cout << print_sexpr(print_term_full(out)) << std::endl;
        return 0;
      }
      if (arg_demo == "imp-skip") {
        const Lang& S = corpus.lang("imp");
        Term t = elaborate(LangView(S), closed, parse_surface(parse_sexpr("(skip)")), std::nullopt);
        std::cout << print_sexpr(print_term_full(demo_imp(corpus, t))) << std::endl;
        return 0;
      }
      throw Error("unknown demo: " + arg_demo);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
  return 0;
}
