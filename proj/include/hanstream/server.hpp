#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "hanstream/session.hpp"
#include "hanstream/story.hpp"

namespace hanstream {

struct ServerOptions {
  std::string host = "127.0.0.1";
  unsigned short port = 8080;  // 0 picks a free port
  std::optional<std::filesystem::path> static_dir;  // served at "/"
  std::optional<std::filesystem::path> trace_dir;   // <dir>/<session>.jsonl per session
  SessionConfig session;
  std::size_t max_queued_frames = 8;
  int threads = 1;
  bool handle_signals = false;  // stop on SIGINT/SIGTERM
};

/// WebSocket endpoint at /ws plus static HTTP at /. Sessions are created on
/// the first hello naming them ("default" when omitted) and all share the
/// server's story.
class Server {
 public:
  Server(StoryScript story, ServerOptions opts);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds and starts the worker threads. Returns the bound port.
  unsigned short start();
  /// Blocks until stop() or a signal.
  void wait();
  void stop();

  unsigned short port() const noexcept;
  std::size_t session_count() const;
  /// Frames dropped by backpressure in the named session.
  std::size_t queue_drops(const std::string& session) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Session ids are 1 to 64 characters from [A-Za-z0-9_-].
bool valid_session_id(std::string_view id) noexcept;

}  // namespace hanstream
