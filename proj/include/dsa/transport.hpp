#pragma once

#include <functional>
#include <memory>
#include <string>

namespace dsa {

/// One request line out, one reply line back. Lines never contain the
/// trailing newline; transports add/strip it.
class LineTransport {
 public:
  virtual ~LineTransport() = default;
  virtual std::string request(const std::string& line) = 0;
};

using LineHandler = std::function<std::string(const std::string&)>;

/// In-process transport with the same encode/decode semantics as TCP:
/// the handler receives exactly the bytes a remote peer would.
class LoopbackTransport : public LineTransport {
 public:
  explicit LoopbackTransport(LineHandler handler) : handler_(std::move(handler)) {}
  std::string request(const std::string& line) override { return handler_(line); }

 private:
  LineHandler handler_;
};

/// Client side of the newline-delimited TCP protocol.
class TcpClient : public LineTransport {
 public:
  TcpClient(const std::string& host, int port);
  ~TcpClient() override;
  TcpClient(const TcpClient&) = delete;
  TcpClient& operator=(const TcpClient&) = delete;

  std::string request(const std::string& line) override;
  void close();

 private:
  void send_line(const std::string& line);
  std::string recv_line();

  int fd_ = -1;
  std::string buffer_;
};

/// Single-peer server: accepts one connection and answers requests in
/// arrival order until the peer disconnects. A handler exception is
/// reported to the peer as an `error` line and ends the session.
class TcpServer {
 public:
  TcpServer(const std::string& host, int port);
  ~TcpServer();
  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  int port() const { return port_; }
  /// Blocks; returns when the peer disconnects.
  void serve_once(const LineHandler& handler);

 private:
  int listen_fd_ = -1;
  int port_ = 0;
};

/// host:port strings used in configs and CLI flags.
struct Endpoint {
  std::string host;
  int port = 0;
};
Endpoint parse_endpoint(const std::string& text);

}  // namespace dsa
