#include "cli.hpp"

#include <csignal>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mdt/lexicon.hpp"
#include "mdt/service.hpp"
#include "mdt/xfer.hpp"

namespace mdt {

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kLexicon = 2;

struct TranslateArgs {
  std::string lexicon;
  std::string source;
  std::string target;
  bool json = false;
  bool trace = false;
  bool pre_analyzed = false;
  std::size_t max = 0;
  std::size_t max_gap = 0;
  std::vector<std::string> text;
};

struct ValidateArgs {
  std::string dir;
  std::string source;
  std::string target;
};

struct ServeArgs {
  std::string lexicon;
  std::string source;
  std::string target;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string log;
  std::string ui = "ui/dist";
};

void print_trace(const TranslationResult& r, std::ostream& err) {
  err << "# analyzed:    " << format_sentence(r.analyzed) << "\n";
  err << "# transformed: " << format_sentence(r.transformed) << "\n";
  err << "# candidates:\n";
  for (const auto& c : r.candidates) {
    std::string header = serialize_entry(*c.entry);
    header = header.substr(7, header.find('\n') - 7);  // drop "group: "
    err << "#   entry=" << c.entry_index + 1 << " " << header << " @";
    for (auto p : c.positions) err << " " << p;
    err << "\n";
  }
  for (std::size_t i = 0; i < r.assignments.size(); ++i) {
    err << "# assignment " << i + 1 << " score=(" << r.assignments[i].score.covered << ","
        << r.assignments[i].score.neg_groups << ")\n";
    std::istringstream dump(dump_assignment(r.assignments[i]));
    for (std::string line; std::getline(dump, line);) err << "#   " << line << "\n";
    if (i < r.transfers.size()) {
      for (const auto& opt : r.transfers[i]) {
        err << "#   transfer:";
        for (const auto& root : opt.roots) err << " " << format_target(root);
        err << "\n";
      }
    }
  }
}

int run_translate(const TranslateArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
  std::optional<Lexicon> lex;
  try {
    lex.emplace(Lexicon::load(a.lexicon, a.source, a.target));
  } catch (const LexiconError& e) {
    err << "error: " << e.what() << "\n";
    return kLexicon;
  }
  TranslateOptions opts;
  opts.max_outputs = a.max == 0 ? kUnlimited : a.max;
  opts.max_gap = a.max_gap;
  opts.trace = a.trace;

  std::vector<TranslationResult> results;
  if (a.pre_analyzed) {
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
      for (auto& s : parse_preanalyzed(ss.str())) results.push_back(translate_analyzed(std::move(s), *lex, opts));
    } catch (const LexiconError& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    }
  } else if (!a.text.empty()) {
    std::string text;
    for (const auto& t : a.text) text += (text.empty() ? "" : " ") + t;
    results.push_back(translate(text, *lex, opts));
  } else {
    for (std::string line; std::getline(in, line);) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      results.push_back(translate(line, *lex, opts));
    }
  }

  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    if (a.json) {
      out << result_to_json(r, a.trace).dump() << "\n";
      continue;
    }
    if (a.trace) print_trace(r, err);
    if (i > 0) out << "\n";
    for (const auto& o : r.outputs) out << o.text() << "\n";
  }
  return kOk;
}

int run_validate(const ValidateArgs& a, std::ostream& out) {
  auto diags = lint_lexicon(a.dir, a.source, a.target);
  for (const auto& d : diags) out << d << "\n";
  if (!diags.empty()) return kLexicon;
  auto lex = Lexicon::load(a.dir, a.source, a.target);
  out << "ok: " << lex.entries().size() << " groups, " << lex.rules().size() << " rules ("
      << lex.languages().source << " -> " << lex.languages().target << ")\n";
  return kOk;
}

HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

int run_serve(const ServeArgs& a, std::ostream& out, std::ostream& err) {
  std::optional<Lexicon> lex;
  try {
    lex.emplace(Lexicon::load(a.lexicon, a.source, a.target));
  } catch (const LexiconError& e) {
    err << "error: " << e.what() << "\n";
    return kLexicon;
  }
  std::string log_path = a.log;
  if (log_path.empty()) {
    const char* env = std::getenv("MDT_LOG");
    log_path = env ? env : "mdt-accept.log";
  }
  AcceptanceLog log(log_path);
  TranslationService service(*lex, &log);
  HttpServer server(service, a.ui);
  int port = server.bind(a.host, a.port);
  if (port < 0) {
    err << "error: cannot bind " << a.host << ":" << a.port << "\n";
    return kUsage;
  }
  out << "serving " << lex->entries().size() << " groups on http://" << a.host << ":" << port << " (log: " << log_path
      << ")" << std::endl;
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.listen();
  g_server = nullptr;
  return kOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimal dependency translation: group lexicon MT for computer-assisted translation", "mdt"};
  app.require_subcommand(1);

  TranslateArgs ta;
  auto* translate = app.add_subcommand("translate", "Translate text from arguments or stdin (one sentence per line)");
  translate->add_option("--lexicon", ta.lexicon, "Lexicon directory")->required();
  translate->add_option("--source", ta.source, "Source language code (default: detected)");
  translate->add_option("--target", ta.target, "Target language code (default: detected)");
  translate->add_flag("--json", ta.json, "Print the structured result document, one per line");
  translate->add_option("--max", ta.max, "Maximum outputs per sentence (0 = unlimited)");
  translate->add_option("--max-gap", ta.max_gap, "Live tokens a group may skip between items");
  translate->add_flag("--trace", ta.trace, "Dump intermediate steps (stderr, or in the JSON document)");
  translate->add_flag("--pre-analyzed", ta.pre_analyzed,
                      "Read surface<TAB>lexeme<TAB>pos<TAB>features lines from stdin instead of raw text");
  translate->add_option("text", ta.text, "Sentence to translate");

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Check a lexicon directory");
  auto* dir_pos = validate->add_option("dir", va.dir, "Lexicon directory");
  validate->add_option("--lexicon", va.dir, "Lexicon directory")->excludes(dir_pos);
  validate->add_option("--source", va.source, "Source language code");
  validate->add_option("--target", va.target, "Target language code");

  ServeArgs sa;
  auto* serve = app.add_subcommand("serve", "Run the HTTP translation service");
  serve->add_option("--lexicon", sa.lexicon, "Lexicon directory")->required();
  serve->add_option("--source", sa.source, "Source language code");
  serve->add_option("--target", sa.target, "Target language code");
  serve->add_option("--host", sa.host, "Address to bind");
  serve->add_option("--port", sa.port, "Port to listen on (0 = any free port)");
  serve->add_option("--log", sa.log, "Acceptance log file (default: $MDT_LOG or mdt-accept.log)");
  serve->add_option("--ui", sa.ui, "Directory of static UI files served at /");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  if (translate->parsed()) return run_translate(ta, in, out, err);
  if (validate->parsed()) {
    if (va.dir.empty()) {
      err << "error: validate needs a lexicon directory\n";
      return kUsage;
    }
    return run_validate(va, out);
  }
  return run_serve(sa, out, err);
}

}  // namespace mdt
