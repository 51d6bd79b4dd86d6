#include "mdt/service.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <stdexcept>

#include "httplib.h"
#include "mdt/solver.hpp"

namespace mdt {

using nlohmann::json;

namespace {

json features_json(const FeatureMap& f) {
  json out = json::object();
  for (const auto& [k, v] : f) out[k] = v;
  return out;
}

json sentence_json(const AnalyzedSentence& s) {
  json tokens = json::array();
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    const auto& t = s.tokens[i];
    json readings = json::array();
    for (const auto& a : t.analyses) {
      readings.push_back({{"lexeme", a.lexeme}, {"pos", a.pos}, {"features", features_json(a.features)}});
    }
    tokens.push_back({{"index", i},
                      {"surface", t.surface},
                      {"deleted", t.deleted},
                      {"transformed", t.transformed},
                      {"analyses", std::move(readings)}});
  }
  return tokens;
}

json instance_json(const GroupInstance& inst) {
  return {{"entry", inst.entry_index + 1},
          {"head", inst.matched[inst.entry->head_index - 1].lexeme},
          {"positions", inst.positions},
          {"span", {inst.first(), inst.last()}}};
}

const char* segment_kind(Segment::Kind k) {
  switch (k) {
    case Segment::Kind::Target: return "target";
    case Segment::Kind::Untranslated: return "untranslated";
    case Segment::Kind::Gap: return "gap";
  }
  return "target";
}

HttpResponse error(int status, const std::string& message) {
  return HttpResponse{status, json{{"error", message}}.dump()};
}

}  // namespace

json result_to_json(const TranslationResult& r, bool trace) {
  json doc;
  doc["source"] = r.source;
  doc["analyses"] = sentence_json(r.transformed);
  doc["analysis_text"] = format_sentence(r.transformed);

  json assignments = json::array();
  for (const auto& a : r.assignments) {
    json instances = json::array();
    for (const auto& inst : a.instances) instances.push_back(instance_json(inst));
    json merges = json::array();
    for (const auto& m : a.merges) merges.push_back({{"host", m.host}, {"slot", m.slot + 1}, {"filler", m.filler}});
    assignments.push_back({{"score", {a.score.covered, a.score.neg_groups}},
                           {"instances", std::move(instances)},
                           {"merges", std::move(merges)},
                           {"dump", dump_assignment(a)}});
  }
  doc["assignments"] = std::move(assignments);

  json outputs = json::array();
  json details = json::array();
  for (const auto& o : r.outputs) {
    json segs = json::array();
    for (const auto& s : o.segments) {
      segs.push_back({{"text", s.text},
                      {"kind", segment_kind(s.kind)},
                      {"untranslated", s.kind == Segment::Kind::Untranslated},
                      {"gap", s.kind == Segment::Kind::Gap}});
    }
    outputs.push_back(o.text());
    details.push_back({{"assignment", o.assignment}, {"segments", std::move(segs)}});
  }
  doc["outputs"] = std::move(outputs);
  doc["output_details"] = std::move(details);

  if (trace) {
    json t;
    t["analyzed"] = sentence_json(r.analyzed);
    t["analyzed_text"] = format_sentence(r.analyzed);
    json cands = json::array();
    for (const auto& c : r.candidates) cands.push_back(instance_json(c));
    t["candidates"] = std::move(cands);
    json transfers = json::array();
    for (const auto& per_assignment : r.transfers) {
      json opts = json::array();
      for (const auto& opt : per_assignment) {
        json roots = json::array();
        for (const auto& root : opt.roots) roots.push_back(format_target(root));
        opts.push_back({{"roots", std::move(roots)}, {"untranslated_instances", opt.untranslated}});
      }
      transfers.push_back(std::move(opts));
    }
    t["transfer"] = std::move(transfers);
    doc["trace"] = std::move(t);
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Acceptance log

AcceptanceRecord make_record(std::string source, std::string chosen, std::vector<std::string> offered,
                             std::string session) {
  AcceptanceRecord r;
  r.timestamp = std::chrono::duration_cast<std::chrono::seconds>(
                    std::chrono::system_clock::now().time_since_epoch())
                    .count();
  r.edited = std::find(offered.begin(), offered.end(), chosen) == offered.end();
  r.session = std::move(session);
  r.source = std::move(source);
  r.chosen = std::move(chosen);
  r.offered = std::move(offered);
  return r;
}

json to_json(const AcceptanceRecord& r, std::size_t id) {
  return {{"id", id},
          {"timestamp", r.timestamp},
          {"session", r.session},
          {"source", r.source},
          {"chosen", r.chosen},
          {"offered", r.offered},
          {"edited", r.edited}};
}

AcceptanceLog::AcceptanceLog(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) ++lines_;
  }
}

std::size_t AcceptanceLog::append(const AcceptanceRecord& record) {
  std::lock_guard lock(mutex_);
  std::size_t id = lines_ + 1;
  std::string line = to_json(record, id).dump() + "\n";
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  if (!out) throw std::runtime_error("cannot open acceptance log " + path_.string());
  out.write(line.data(), static_cast<std::streamsize>(line.size()));
  out.flush();
  if (!out) throw std::runtime_error("cannot write acceptance log " + path_.string());
  lines_ = id;
  return id;
}

std::size_t AcceptanceLog::size() const {
  std::lock_guard lock(mutex_);
  return lines_;
}

// ---------------------------------------------------------------------------
// Handlers

TranslationService::TranslationService(const Lexicon& lexicon, AcceptanceLog* log, TranslateOptions defaults)
    : lexicon_(lexicon), log_(log), defaults_(defaults) {}

HttpResponse TranslationService::translate(std::string_view body) const {
  json req = json::parse(body, nullptr, false);
  if (req.is_discarded() || !req.is_object()) return error(400, "body must be a JSON object");
  if (!req.contains("text") || !req["text"].is_string()) return error(400, "'text' must be a string");
  TranslateOptions opts = defaults_;
  if (req.contains("max")) {
    if (!req["max"].is_number_unsigned()) return error(400, "'max' must be a non-negative integer");
    opts.max_outputs = req["max"].get<std::size_t>();
  }
  if (req.contains("trace")) {
    if (!req["trace"].is_boolean()) return error(400, "'trace' must be a boolean");
    opts.trace = req["trace"].get<bool>();
  }
  const std::string text = req["text"].get<std::string>();
  if (tokenize(text).empty()) return error(422, "empty text");
  auto result = mdt::translate(text, lexicon_, opts);
  return HttpResponse{200, result_to_json(result, opts.trace).dump()};
}

HttpResponse TranslationService::health() const {
  json body{{"status", "ok"},
            {"groups", lexicon_.entries().size()},
            {"rules", lexicon_.rules().size()},
            {"source", lexicon_.languages().source},
            {"target", lexicon_.languages().target}};
  return HttpResponse{200, body.dump()};
}

HttpResponse TranslationService::groups(std::string_view head) const {
  if (head.empty()) return error(400, "missing 'head' parameter");
  std::string text;
  auto ids = lexicon_.entries_headed_by(head);
  if (ids.empty()) ids = lexicon_.entries_headed_by(to_lower(head));
  for (std::size_t id : ids) text += serialize_entry(lexicon_.entries()[id]);
  return HttpResponse{200, text, "text/plain; charset=utf-8"};
}

HttpResponse TranslationService::accept(std::string_view body) {
  json req = json::parse(body, nullptr, false);
  if (req.is_discarded() || !req.is_object()) return error(400, "body must be a JSON object");
  if (!req.contains("source") || !req["source"].is_string()) return error(400, "'source' must be a string");
  if (!req.contains("chosen") || !req["chosen"].is_string()) return error(400, "'chosen' must be a string");
  std::vector<std::string> offered;
  if (req.contains("offered")) {
    if (!req["offered"].is_array()) return error(400, "'offered' must be an array of strings");
    for (const auto& o : req["offered"]) {
      if (!o.is_string()) return error(400, "'offered' must be an array of strings");
      offered.push_back(o.get<std::string>());
    }
  }
  std::string session;
  if (req.contains("session")) {
    if (!req["session"].is_string()) return error(400, "'session' must be a string");
    session = req["session"].get<std::string>();
  }
  std::string chosen = req["chosen"].get<std::string>();
  if (chosen.empty()) return error(422, "empty chosen translation");
  if (!log_) return error(500, "no acceptance log configured");

  AcceptanceRecord rec = make_record(req["source"].get<std::string>(), std::move(chosen), std::move(offered),
                                     std::move(session));
  try {
    std::size_t id = log_->append(rec);
    return HttpResponse{200, json{{"id", id}, {"edited", rec.edited}}.dump()};
  } catch (const std::exception& e) {
    return error(500, e.what());
  }
}

// ---------------------------------------------------------------------------
// HTTP transport

struct HttpServer::Impl {
  httplib::Server server;
};

namespace {

void send(httplib::Response& res, const HttpResponse& r) {
  res.status = r.status;
  res.set_content(r.body, r.content_type);
}

}  // namespace

HttpServer::HttpServer(TranslationService& service, std::filesystem::path static_dir)
    : impl_(std::make_unique<Impl>()) {
  auto& svr = impl_->server;
  svr.Post("/api/translate", [&service](const httplib::Request& req, httplib::Response& res) {
    send(res, service.translate(req.body));
  });
  svr.Get("/api/health", [&service](const httplib::Request&, httplib::Response& res) { send(res, service.health()); });
  svr.Get("/api/groups", [&service](const httplib::Request& req, httplib::Response& res) {
    send(res, service.groups(req.get_param_value("head")));
  });
  svr.Post("/api/accept", [&service](const httplib::Request& req, httplib::Response& res) {
    send(res, service.accept(req.body));
  });
  if (!static_dir.empty() && std::filesystem::is_directory(static_dir)) {
    svr.set_mount_point("/", static_dir.string());
  }
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace mdt
