#include "hapnav/server.hpp"

#include <atomic>
#include <cstdio>
#include <mutex>
#include <set>
#include <thread>
#include <vector>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "hapnav/errors.hpp"
#include "hapnav/trial_log.hpp"

namespace hapnav {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

tcp::endpoint parse_bind(const std::string& bind) {
    const auto colon = bind.rfind(':');
    if (colon == std::string::npos) throw Error(ErrorCode::BindFailure, "bind address must be host:port");
    const std::string host = bind.substr(0, colon);
    int port = -1;
    try {
        std::size_t used = 0;
        port = std::stoi(bind.substr(colon + 1), &used);
        if (used != bind.size() - colon - 1) port = -1;
    } catch (const std::exception&) {
    }
    if (port < 0 || port > 65535) throw Error(ErrorCode::BindFailure, "bad port in '" + bind + "'");
    boost::system::error_code ec;
    const auto address = asio::ip::make_address(host.empty() ? "0.0.0.0" : host, ec);
    if (ec) throw Error(ErrorCode::BindFailure, "bad host '" + host + "': " + ec.message());
    return {address, static_cast<std::uint16_t>(port)};
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

struct Server::Impl {
    std::shared_ptr<const GatewayConfig> config;
    ServerOptions options;
    asio::io_context io;
    tcp::acceptor acceptor{io};
    std::atomic<bool> stopping{false};
    std::atomic<int> logged{0};
    std::atomic<std::uint64_t> log_seq{0};
    std::mutex mutex;
    std::set<std::shared_ptr<tcp::socket>> open;
    std::vector<std::thread> workers;

    void log_trial(const TrialRecord& record) {
        if (options.log_dir.empty()) return;
        char name[96];
        std::snprintf(name, sizeof name, "gateway_p%03d_t%02d_%06llu.jsonl", record.plan.participant,
                      record.plan.index, static_cast<unsigned long long>(++log_seq));
        try {
            save_trial_log(record, options.log_dir / name);
            ++logged;
        } catch (const std::exception& e) {
            std::fprintf(stderr, "warning: trial log not written: %s\n", e.what());
        }
    }

    ProtocolHandler make_handler() {
        return ProtocolHandler(config, [this](const TrialRecord& r) { log_trial(r); });
    }

    void serve_lines(tcp::socket& socket, std::string buffered) {
        ProtocolHandler handler = make_handler();
        boost::system::error_code ec;
        std::string out;
        for (;;) {
            std::size_t n = 0;
            if (const auto nl = buffered.find('\n'); nl != std::string::npos) {
                n = nl + 1;
            } else if (buffered.size() > kMaxLineBytes) {
                n = 0;
            } else {
                n = asio::read_until(socket, asio::dynamic_buffer(buffered, kMaxLineBytes + 1), '\n', ec);
                if (ec && ec != asio::error::not_found) break;
            }
            HandlerOutput result;
            if (n == 0) {
                result = handler.oversize_line();
            } else {
                std::string line = buffered.substr(0, n - 1);
                buffered.erase(0, n);
                strip_cr(line);
                if (line.empty()) continue;
                result = handler.handle_line(line);
            }
            out.clear();
            for (const std::string& l : result.lines) out.append(l).push_back('\n');
            if (!out.empty()) asio::write(socket, asio::buffer(out), ec);
            if (ec || result.close) break;
        }
        handler.disconnect();
    }

    void serve_websocket(tcp::socket& socket, beast::flat_buffer buffer) {
        ProtocolHandler handler = make_handler();
        try {
            beast::http::request<beast::http::string_body> req;
            beast::http::read(socket, buffer, req);
            websocket::stream<tcp::socket&> ws(socket);
            ws.read_message_max(kMaxLineBytes);
            ws.accept(req);
            ws.text(true);
            for (;;) {
                beast::flat_buffer message;
                boost::system::error_code ec;
                ws.read(message, ec);
                HandlerOutput result;
                if (ec == websocket::error::message_too_big) {
                    result = handler.oversize_line();
                } else if (ec) {
                    break;
                } else {
                    const std::string text = beast::buffers_to_string(message.data());
                    std::size_t start = 0;
                    while (start <= text.size() && !result.close) {
                        auto end = text.find('\n', start);
                        if (end == std::string::npos) end = text.size();
                        std::string line = text.substr(start, end - start);
                        start = end + 1;
                        strip_cr(line);
                        if (line.empty()) continue;
                        HandlerOutput part = handler.handle_line(line);
                        result.lines.insert(result.lines.end(), part.lines.begin(), part.lines.end());
                        result.close = part.close;
                    }
                }
                for (const std::string& l : result.lines) ws.write(asio::buffer(l));
                if (result.close) {
                    ws.close(websocket::close_code::policy_error, ec);
                    break;
                }
            }
        } catch (const boost::system::system_error&) {
        }
        handler.disconnect();
    }

    void serve(std::shared_ptr<tcp::socket> socket) {
        try {
            socket->set_option(tcp::no_delay(true));
            beast::flat_buffer buffer;
            // Four bytes tell an HTTP upgrade apart from a JSON line.
            while (buffer.size() < 4) {
                const auto n = socket->read_some(buffer.prepare(512));
                buffer.commit(n);
                const std::string head = beast::buffers_to_string(buffer.data());
                if (head.find('\n') != std::string::npos) break;
            }
            const std::string head = beast::buffers_to_string(buffer.data());
            if (head.rfind("GET ", 0) == 0) {
                serve_websocket(*socket, std::move(buffer));
            } else {
                serve_lines(*socket, head);
            }
        } catch (const std::exception&) {
            // Peer vanished mid-read; the handler already finalized its trial.
        }
        boost::system::error_code ec;
        socket->shutdown(tcp::socket::shutdown_both, ec);
        socket->close(ec);
        std::lock_guard lock(mutex);
        open.erase(socket);
    }
};

Server::Server(GatewayConfig config, ServerOptions options) : impl_(std::make_unique<Impl>()) {
    impl_->config = std::make_shared<const GatewayConfig>(std::move(config));
    impl_->options = std::move(options);
    impl_->config->engine.validate();
    if (!impl_->options.log_dir.empty()) {
        std::error_code fs_ec;
        std::filesystem::create_directories(impl_->options.log_dir, fs_ec);
        if (fs_ec) throw Error(ErrorCode::IoError, "cannot create " + impl_->options.log_dir.string());
    }
    const tcp::endpoint endpoint = parse_bind(impl_->options.bind);
    boost::system::error_code ec;
    impl_->acceptor.open(endpoint.protocol(), ec);
    if (!ec) impl_->acceptor.set_option(tcp::acceptor::reuse_address(true), ec);
    if (!ec) impl_->acceptor.bind(endpoint, ec);
    if (!ec) impl_->acceptor.listen(asio::socket_base::max_listen_connections, ec);
    if (ec) throw Error(ErrorCode::BindFailure, impl_->options.bind + ": " + ec.message());
}

Server::~Server() {
    stop();
    for (auto& t : impl_->workers) {
        if (t.joinable()) t.join();
    }
    boost::system::error_code ec;
    impl_->acceptor.close(ec);
}

std::uint16_t Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::run() {
    for (;;) {
        auto socket = std::make_shared<tcp::socket>(impl_->io);
        boost::system::error_code ec;
        impl_->acceptor.accept(*socket, ec);
        if (impl_->stopping) break;
        if (ec) continue;
        std::lock_guard lock(impl_->mutex);
        impl_->open.insert(socket);
        impl_->workers.emplace_back([impl = impl_.get(), socket] { impl->serve(socket); });
    }
    std::vector<std::thread> workers;
    {
        std::lock_guard lock(impl_->mutex);
        workers.swap(impl_->workers);
    }
    for (auto& t : workers) t.join();
    boost::system::error_code ec;
    impl_->acceptor.close(ec);
}

void Server::stop() {
    if (impl_->stopping.exchange(true)) return;
    boost::system::error_code ec;
    {
        std::lock_guard lock(impl_->mutex);
        for (const auto& socket : impl_->open) socket->shutdown(tcp::socket::shutdown_both, ec);
    }
    // A blocking accept does not wake on close; a throwaway connection releases it.
    auto endpoint = impl_->acceptor.local_endpoint(ec);
    if (ec) return;
    if (endpoint.address().is_unspecified()) endpoint.address(asio::ip::address_v4::loopback());
    asio::io_context io;
    tcp::socket poke(io);
    poke.connect(endpoint, ec);
}

int Server::trials_logged() const { return impl_->logged; }

}  // namespace hapnav
