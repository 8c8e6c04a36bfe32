#include "hanstream/server.hpp"

#include <atomic>
#include <deque>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "hanstream/dataset.hpp"
#include "hanstream/error.hpp"
#include "hanstream/protocol.hpp"
#include "hanstream/trace.hpp"

namespace hanstream {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

bool valid_session_id(std::string_view id) noexcept {
  if (id.empty() || id.size() > 64) return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

namespace {

std::string error_text(std::string_view code, std::string detail) {
  return wire({{"type", "error"}, {"code", code}, {"detail", std::move(detail)}});
}

std::string_view mime_type(const std::filesystem::path& p) {
  const std::string ext = p.extension().string();
  if (ext == ".html" || ext == ".htm") return "text/html";
  if (ext == ".js" || ext == ".mjs") return "application/javascript";
  if (ext == ".css") return "text/css";
  if (ext == ".json") return "application/json";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".png") return "image/png";
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  if (ext == ".wasm") return "application/wasm";
  if (ext == ".ico") return "image/x-icon";
  if (ext == ".txt") return "text/plain";
  return "application/octet-stream";
}

class LiveSession;
struct Hub;

class WsConnection : public std::enable_shared_from_this<WsConnection> {
 public:
  WsConnection(tcp::socket&& socket, ClientId id, Hub& hub) : ws_(std::move(socket)), id_(id), hub_(hub) {}

  void run(http::request<http::string_body> req);
  void send(std::string text);
  ClientId id() const noexcept { return id_; }

 private:
  void do_read();
  void on_read(beast::error_code ec);
  void do_write();

  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  std::deque<std::string> outbox_;
  bool writing_ = false;
  ClientId id_;
  Hub& hub_;
  std::shared_ptr<LiveSession> session_;
  friend struct Hub;
};

class LiveSession : public std::enable_shared_from_this<LiveSession> {
 public:
  LiveSession(net::io_context& ioc, std::string id, const StoryScript& story, const ServerOptions& opts)
      : strand_(net::make_strand(ioc)), queue_(opts.max_queued_frames), session_(std::move(id), story, opts.session) {
    if (opts.trace_dir) {
      std::filesystem::create_directories(*opts.trace_dir);
      trace_.open(*opts.trace_dir / (session_.id() + ".jsonl"), std::ios::out | std::ios::trunc);
      if (!trace_) throw Error(Errc::MissingData, "cannot open trace file in " + opts.trace_dir->string());
      session_.set_trace_sink([this](std::int64_t t, const nlohmann::json& msg) {
        trace_ << encode_trace_line({t, msg}) << '\n';
        trace_.flush();
      });
    }
  }

  void join(const std::shared_ptr<WsConnection>& conn) {
    net::post(strand_, [self = shared_from_this(), conn] { self->conns_[conn->id()] = conn; });
  }

  void leave(ClientId id) {
    net::post(strand_, [self = shared_from_this(), id] {
      self->conns_.erase(id);
      self->session_.disconnect(id);
    });
  }

  void enqueue(ClientId from, InboundMessage msg) {
    std::lock_guard lock(mu_);
    queue_.push({from, std::move(msg)});
    if (!scheduled_) {
      scheduled_ = true;
      net::post(strand_, [self = shared_from_this()] { self->drain(); });
    }
  }

  void reject(ClientId from, std::string text) {
    net::post(strand_, [self = shared_from_this(), from, text = std::move(text)] {
      self->deliver(from, self->session_.handle_message(from, text));
    });
  }

  std::size_t drops() const {
    std::lock_guard lock(mu_);
    return queue_.dropped();
  }

 private:
  void drain() {
    for (;;) {
      std::optional<InboundQueue::Item> item;
      {
        std::lock_guard lock(mu_);
        item = queue_.pop();
        if (!item) {
          scheduled_ = false;
          return;
        }
      }
      try {
        deliver(item->from, session_.handle(item->from, item->msg));
      } catch (const std::exception& e) {
        std::cerr << "session " << session_.id() << ": " << e.what() << '\n';
      }
    }
  }

  void deliver(ClientId from, std::vector<Outbound> outs) {
    for (auto& out : outs) {
      if (out.target == Outbound::Target::Sender) {
        auto it = conns_.find(from);
        if (it == conns_.end()) continue;
        if (auto c = it->second.lock()) c->send(std::move(out.text));
      } else {
        for (auto& [id, weak] : conns_) {
          if (auto c = weak.lock()) c->send(out.text);
        }
      }
    }
  }

  net::strand<net::io_context::executor_type> strand_;
  mutable std::mutex mu_;
  InboundQueue queue_;
  bool scheduled_ = false;
  Session session_;
  std::map<ClientId, std::weak_ptr<WsConnection>> conns_;
  std::ofstream trace_;
};

struct Hub {
  Hub(net::io_context& c, const StoryScript& s, const ServerOptions& o) : ioc(c), story(s), opts(o) {}

  net::io_context& ioc;
  const StoryScript& story;
  const ServerOptions& opts;
  mutable std::mutex mu;
  std::map<std::string, std::shared_ptr<LiveSession>> sessions;
  std::atomic<ClientId> next_client{1};

  std::shared_ptr<LiveSession> get_or_create(const std::string& id) {
    std::lock_guard lock(mu);
    auto& slot = sessions[id];
    if (!slot) slot = std::make_shared<LiveSession>(ioc, id, story, opts);
    return slot;
  }

  // Runs on the connection's strand.
  void dispatch(WsConnection& conn, const std::string& text) {
    InboundMessage msg;
    try {
      msg = parse_inbound(std::string_view(text));
    } catch (const Error& e) {
      if (conn.session_) {
        conn.session_->reject(conn.id(), text);
      } else {
        conn.send(error_text("bad_message", e.detail()));
      }
      return;
    }
    if (const auto* hello = std::get_if<HelloMsg>(&msg)) {
      const std::string id = hello->session.value_or("default");
      if (!valid_session_id(id)) {
        conn.send(error_text("bad_message", "invalid session id"));
        return;
      }
      if (!conn.session_) {
        try {
          conn.session_ = get_or_create(id);
        } catch (const std::exception& e) {
          conn.send(error_text("bad_message", e.what()));
          return;
        }
        conn.session_->join(conn.shared_from_this());
      } else if (hello->session && get_or_create(id) != conn.session_) {
        conn.send(error_text("bad_message", "connection already joined another session"));
        return;
      }
    } else if (!conn.session_) {
      conn.send(error_text("no_hello", "send hello first"));
      return;
    }
    conn.session_->enqueue(conn.id(), std::move(msg));
  }

  void leave(WsConnection& conn) {
    if (conn.session_) conn.session_->leave(conn.id());
  }
};

}  // namespace

void WsConnection::run(http::request<http::string_body> req) {
  ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
  ws_.async_accept(req, [self = shared_from_this()](beast::error_code ec) {
    if (ec) return;
    self->do_read();
  });
}

void WsConnection::do_read() {
  ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) { self->on_read(ec); });
}

void WsConnection::on_read(beast::error_code ec) {
  if (ec) {
    hub_.leave(*this);
    return;
  }
  std::string text = beast::buffers_to_string(buffer_.data());
  buffer_.consume(buffer_.size());
  hub_.dispatch(*this, text);
  do_read();
}

void WsConnection::send(std::string text) {
  net::post(ws_.get_executor(), [self = shared_from_this(), text = std::move(text)]() mutable {
    self->outbox_.push_back(std::move(text));
    if (!self->writing_) self->do_write();
  });
}

void WsConnection::do_write() {
  writing_ = true;
  ws_.text(true);
  ws_.async_write(net::buffer(outbox_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
    if (ec) {
      self->outbox_.clear();
      self->writing_ = false;
      return;
    }
    self->outbox_.pop_front();
    if (self->outbox_.empty()) {
      self->writing_ = false;
    } else {
      self->do_write();
    }
  });
}

namespace {

class HttpSession : public std::enable_shared_from_this<HttpSession> {
 public:
  HttpSession(tcp::socket&& socket, Hub& hub) : stream_(std::move(socket)), hub_(hub) {}

  void run() {
    net::dispatch(stream_.get_executor(), [self = shared_from_this()] { self->do_read(); });
  }

 private:
  void do_read() {
    req_ = {};
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(stream_, buffer_, req_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      self->on_read(ec);
    });
  }

  void on_read(beast::error_code ec) {
    if (ec == http::error::end_of_stream) {
      beast::error_code ignored;
      stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
      return;
    }
    if (ec) return;
    if (websocket::is_upgrade(req_)) {
      if (req_.target() != "/ws") {
        respond(http::status::not_found, "text/plain", "websocket endpoint is /ws\n");
        return;
      }
      stream_.expires_never();
      auto conn = std::make_shared<WsConnection>(stream_.release_socket(), hub_.next_client++, hub_);
      conn->run(std::move(req_));
      return;
    }
    serve_static();
  }

  void serve_static() {
    if (req_.method() != http::verb::get && req_.method() != http::verb::head) {
      respond(http::status::method_not_allowed, "text/plain", "method not allowed\n");
      return;
    }
    std::string target(req_.target());
    if (auto q = target.find('?'); q != std::string::npos) target.resize(q);
    if (target.empty() || target[0] != '/' || target.find("..") != std::string::npos) {
      respond(http::status::bad_request, "text/plain", "bad path\n");
      return;
    }
    if (!hub_.opts.static_dir) {
      if (target == "/") {
        respond(http::status::ok, "text/html",
                "<!doctype html><title>hanstream</title><p>hanstream server. WebSocket endpoint: /ws</p>\n");
      } else {
        respond(http::status::not_found, "text/plain", "not found\n");
      }
      return;
    }
    if (target.back() == '/') target += "index.html";
    const std::filesystem::path path = *hub_.opts.static_dir / target.substr(1);
    std::error_code fs_ec;
    if (!std::filesystem::is_regular_file(path, fs_ec)) {
      respond(http::status::not_found, "text/plain", "not found\n");
      return;
    }
    std::string body;
    try {
      body = read_file(path);
    } catch (const Error&) {
      respond(http::status::not_found, "text/plain", "not found\n");
      return;
    }
    respond(http::status::ok, mime_type(path), std::move(body));
  }

  void respond(http::status status, std::string_view type, std::string body) {
    auto res = std::make_shared<http::response<http::string_body>>(status, req_.version());
    res->set(http::field::server, "hanstream");
    res->set(http::field::content_type, beast::string_view(type.data(), type.size()));
    res->keep_alive(req_.keep_alive());
    const bool head = req_.method() == http::verb::head;
    res->body() = std::move(body);
    res->prepare_payload();
    if (head) res->body().clear();
    http::async_write(stream_, *res, [self = shared_from_this(), res](beast::error_code ec, std::size_t) {
      if (ec) return;
      if (!res->keep_alive()) {
        beast::error_code ignored;
        self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
        return;
      }
      self->do_read();
    });
  }

  beast::tcp_stream stream_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
  Hub& hub_;
};

}  // namespace

struct Server::Impl {
  StoryScript story;
  ServerOptions opts;
  net::io_context ioc;
  tcp::acceptor acceptor{ioc};
  net::signal_set signals{ioc};
  Hub hub{ioc, story, opts};
  std::vector<std::thread> threads;
  unsigned short bound_port = 0;

  Impl(StoryScript s, ServerOptions o) : story(std::move(s)), opts(std::move(o)) {}

  void do_accept() {
    acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
      if (!acceptor.is_open()) return;
      if (!ec) std::make_shared<HttpSession>(std::move(socket), hub)->run();
      do_accept();
    });
  }
};

Server::Server(StoryScript story, ServerOptions opts) : impl_(std::make_unique<Impl>(std::move(story), std::move(opts))) {
  if (impl_->opts.threads < 1) throw Error(Errc::InvalidConfig, "threads must be >= 1");
  if (impl_->opts.max_queued_frames < 1) throw Error(Errc::InvalidConfig, "max_queued_frames must be >= 1");
}

Server::~Server() {
  stop();
  wait();
}

unsigned short Server::start() {
  auto& im = *impl_;
  beast::error_code ec;
  const auto address = net::ip::make_address(im.opts.host, ec);
  if (ec) throw Error(Errc::InvalidConfig, "bad host address: " + im.opts.host);
  const tcp::endpoint endpoint{address, im.opts.port};
  im.acceptor.open(endpoint.protocol());
  im.acceptor.set_option(net::socket_base::reuse_address(true));
  im.acceptor.bind(endpoint, ec);
  if (ec) throw Error(Errc::InvalidConfig, "cannot bind " + im.opts.host + ":" + std::to_string(im.opts.port) + ": " + ec.message());
  im.acceptor.listen();
  im.bound_port = im.acceptor.local_endpoint().port();
  if (im.opts.handle_signals) {
    im.signals.add(SIGINT);
    im.signals.add(SIGTERM);
    im.signals.async_wait([this](beast::error_code, int) { stop(); });
  }
  im.do_accept();
  for (int i = 0; i < im.opts.threads; ++i) im.threads.emplace_back([&im] { im.ioc.run(); });
  return im.bound_port;
}

void Server::wait() {
  for (auto& t : impl_->threads) {
    if (t.joinable()) t.join();
  }
  impl_->threads.clear();
}

void Server::stop() {
  auto& im = *impl_;
  net::post(im.ioc, [&im] {
    beast::error_code ignored;
    im.acceptor.close(ignored);
    im.signals.cancel(ignored);
  });
  im.ioc.stop();
}

unsigned short Server::port() const noexcept { return impl_->bound_port; }

std::size_t Server::session_count() const {
  std::lock_guard lock(impl_->hub.mu);
  return impl_->hub.sessions.size();
}

std::size_t Server::queue_drops(const std::string& session) const {
  std::lock_guard lock(impl_->hub.mu);
  const auto it = impl_->hub.sessions.find(session);
  return it == impl_->hub.sessions.end() ? 0 : it->second->drops();
}

}  // namespace hanstream
