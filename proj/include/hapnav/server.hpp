#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>

#include "hapnav/protocol.hpp"

namespace hapnav {

struct ServerOptions {
    std::string bind = "127.0.0.1:8765";  ///< host:port; port 0 picks a free one
    std::filesystem::path log_dir;         ///< finished trials are logged here when set
};

/// TCP gateway. Each connection speaks newline-delimited JSON, or WebSocket
/// text messages (one or more lines each) when it opens with an HTTP upgrade.
/// One thread and one ProtocolHandler per connection.
class Server {
public:
    /// Binds immediately. Throws Error(BindFailure).
    Server(GatewayConfig config, ServerOptions options);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    std::uint16_t port() const;
    /// Accepts until stop(); joins connection threads before returning.
    void run();
    /// Safe from any thread; not async-signal-safe.
    void stop();
    int trials_logged() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace hapnav
