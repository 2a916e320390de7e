#include "lemmaforge/smt/solver.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "lemmaforge/hash.hpp"

extern char** environ;

namespace lemmaforge::smt {

const char* to_string(Status s) {
  switch (s) {
    case Status::Proved: return "Proved";
    case Status::Refuted: return "Refuted";
    case Status::Unknown: return "Unknown";
    case Status::Timeout: return "Timeout";
    case Status::SolverError: return "SolverError";
  }
  return "?";
}

namespace {

std::vector<std::string> split_command(const std::string& command) {
  std::istringstream in(command);
  std::vector<std::string> words;
  std::string w;
  while (in >> std::quoted(w)) words.push_back(w);
  return words;
}

void ignore_sigpipe() {
  static std::once_flag once;
  std::call_once(once, [] { signal(SIGPIPE, SIG_IGN); });
}

Verdict parse_output(const std::string& output) {
  Verdict v;
  std::istringstream in(output);
  std::string first;
  in >> first;
  if (first == "unsat") {
    v.status = Status::Proved;
  } else if (first == "sat") {
    v.status = Status::Refuted;
    std::string rest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    size_t start = rest.find_first_not_of(" \t\r\n");
    v.model = start == std::string::npos ? "" : rest.substr(start);
  } else if (first == "unknown") {
    v.status = Status::Unknown;
  } else if (first == "timeout") {
    v.status = Status::Timeout;
  } else {
    v.status = Status::SolverError;
    v.detail = output.empty() ? "no output from solver" : output.substr(0, 400);
  }
  return v;
}

}  // namespace

Verdict run_solver(const std::string& script, const SolverConfig& config) {
  using Clock = std::chrono::steady_clock;
  ignore_sigpipe();
  Verdict failed;
  failed.status = Status::SolverError;

  auto words = split_command(config.command);
  if (words.empty()) {
    failed.detail = "empty solver command";
    return failed;
  }
  std::vector<char*> argv;
  for (auto& w : words) argv.push_back(w.data());
  argv.push_back(nullptr);

  int in[2], out[2];
  if (pipe2(in, O_CLOEXEC) != 0) {
    failed.detail = std::strerror(errno);
    return failed;
  }
  if (pipe2(out, O_CLOEXEC) != 0) {
    failed.detail = std::strerror(errno);
    close(in[0]);
    close(in[1]);
    return failed;
  }
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, in[0], 0);
  posix_spawn_file_actions_adddup2(&actions, out[1], 1);
  posix_spawn_file_actions_adddup2(&actions, out[1], 2);
  posix_spawn_file_actions_addclose(&actions, in[1]);
  posix_spawn_file_actions_addclose(&actions, out[0]);

  auto start = Clock::now();
  pid_t pid = 0;
  int rc = posix_spawnp(&pid, argv[0], &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  close(in[0]);
  close(out[1]);
  if (rc != 0) {
    close(in[1]);
    close(out[0]);
    failed.detail = "cannot run '" + words[0] + "': " + std::strerror(rc);
    return failed;
  }
  fcntl(in[1], F_SETFL, fcntl(in[1], F_GETFL) | O_NONBLOCK);
  fcntl(out[0], F_SETFL, fcntl(out[0], F_GETFL) | O_NONBLOCK);

  const std::string input = script + "(get-model)\n";
  size_t written = 0;
  int to_child = in[1];
  std::string output;
  bool timed_out = false;
  auto deadline = start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(config.timeout_s));

  while (true) {
    auto now = Clock::now();
    if (now >= deadline) {
      timed_out = true;
      break;
    }
    int wait_ms = static_cast<int>(std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count()) + 1;
    pollfd fds[2];
    int n = 0;
    fds[n++] = {out[0], POLLIN, 0};
    if (to_child >= 0) fds[n++] = {to_child, POLLOUT, 0};
    int ready = poll(fds, n, wait_ms);
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (to_child >= 0 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
      ssize_t k = write(to_child, input.data() + written, input.size() - written);
      if (k > 0) written += static_cast<size_t>(k);
      if (k < 0 && errno != EAGAIN) written = input.size();
      if (written == input.size()) {
        close(to_child);
        to_child = -1;
      }
    }
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      char buf[4096];
      ssize_t k = read(out[0], buf, sizeof buf);
      if (k > 0) {
        output.append(buf, static_cast<size_t>(k));
      } else if (k == 0 || errno != EAGAIN) {
        break;
      }
    }
  }
  if (to_child >= 0) close(to_child);
  close(out[0]);
  if (timed_out) kill(pid, SIGKILL);
  int st = 0;
  waitpid(pid, &st, 0);
  double elapsed = std::chrono::duration<double>(Clock::now() - start).count();

  Verdict v;
  if (timed_out) {
    v.status = Status::Timeout;
  } else {
    v = parse_output(output);
  }
  v.time_s = elapsed;
  return v;
}

namespace {

std::string cache_path(const std::string& dir, const std::string& command, const std::string& script) {
  return (std::filesystem::path(dir) / (sha256_hex(command + "\n" + script) + ".json")).string();
}

bool load_cached(const std::string& path, Verdict& v) {
  std::ifstream in(path);
  if (!in) return false;
  try {
    auto j = nlohmann::json::parse(in);
    std::string status = j.at("status");
    for (Status s : {Status::Proved, Status::Refuted, Status::Unknown, Status::Timeout, Status::SolverError}) {
      if (status == to_string(s)) v.status = s;
    }
    v.time_s = j.at("time_s");
    v.model = j.value("model", "");
    v.detail = j.value("detail", "");
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

void store_cached(const std::string& path, const Verdict& v) {
  nlohmann::ordered_json j;
  j["status"] = to_string(v.status);
  j["time_s"] = v.time_s;
  j["model"] = v.model;
  j["detail"] = v.detail;
  std::string tmp = path + ".tmp" + std::to_string(getpid()) + "_" +
                    std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp);
    out << j.dump(2) << "\n";
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
}

}  // namespace

std::vector<Verdict> discharge(const std::vector<std::string>& scripts, const DischargeOptions& options) {
  std::vector<Verdict> out(scripts.size());
  if (!options.cache_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(options.cache_dir, ec);
  }
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < scripts.size(); i = next++) {
      std::string path;
      if (!options.cache_dir.empty()) {
        path = cache_path(options.cache_dir, options.solver.command, scripts[i]);
        if (load_cached(path, out[i])) continue;
      }
      out[i] = run_solver(scripts[i], options.solver);
      // Timeouts and errors depend on the machine; only stable answers are kept.
      bool stable = out[i].status == Status::Proved || out[i].status == Status::Refuted ||
                    out[i].status == Status::Unknown;
      if (!path.empty() && stable) store_cached(path, out[i]);
    }
  };
  int jobs = std::max(1, options.jobs);
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace lemmaforge::smt
