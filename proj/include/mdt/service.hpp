#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mdt/lexicon.hpp"
#include "mdt/xfer.hpp"

namespace mdt {

/// Structured result document shared by `translate --json` and
/// POST /api/translate: source, analyses, assignments, outputs (strings) with
/// parallel `output_details` (segments, assignment index), and with
/// `trace` the pre-transform analyses, candidates and transfer trees.
nlohmann::json result_to_json(const TranslationResult& result, bool trace = false);

/// One translator decision recorded for later lexicon work.
struct AcceptanceRecord {
  std::int64_t timestamp = 0;  // UTC seconds since the epoch
  std::string session;
  std::string source;
  std::string chosen;
  std::vector<std::string> offered;
  bool edited = false;  // chosen differs from every offered output
};

/// Builds a record stamped with the current time; `edited` is derived.
AcceptanceRecord make_record(std::string source, std::string chosen, std::vector<std::string> offered,
                             std::string session);

nlohmann::json to_json(const AcceptanceRecord& record, std::size_t id);

/// Append-only, line-delimited JSON log. Record ids are 1-based line numbers.
/// Appends are serialized; each record is written with a single write and
/// flushed, so a crash can lose at most the record being written.
class AcceptanceLog {
 public:
  explicit AcceptanceLog(std::filesystem::path path);

  /// Appends and returns the record's id. Throws std::runtime_error when
  /// the file cannot be written.
  std::size_t append(const AcceptanceRecord& record);
  std::size_t size() const;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  mutable std::mutex mutex_;
  std::size_t lines_ = 0;
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// Request handling independent of the HTTP transport.
class TranslationService {
 public:
  TranslationService(const Lexicon& lexicon, AcceptanceLog* log, TranslateOptions defaults = {});

  /// POST /api/translate  {text, max?}
  HttpResponse translate(std::string_view body) const;
  /// GET /api/health
  HttpResponse health() const;
  /// GET /api/groups?head=X, entries in groups.mdt syntax.
  HttpResponse groups(std::string_view head) const;
  /// POST /api/accept  {source, chosen, offered?, session?}
  HttpResponse accept(std::string_view body);

 private:
  const Lexicon& lexicon_;
  AcceptanceLog* log_;
  TranslateOptions defaults_;
};

/// HTTP/1.1 front end over a TranslationService. Static files under
/// `static_dir` (when it exists) are served at /.
class HttpServer {
 public:
  HttpServer(TranslationService& service, std::filesystem::path static_dir = {});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Blocks serving requests until stop().
  bool listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mdt
