#include "hls/solver.hpp"

#include "hls/error.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <sstream>

#include <fcntl.h>
#include <poll.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

namespace hls {

const char* to_string(SolverOutcome::Kind kind) {
  switch (kind) {
    case SolverOutcome::Kind::sat: return "sat";
    case SolverOutcome::Kind::unsat: return "unsat";
    case SolverOutcome::Kind::unknown: return "unknown";
    case SolverOutcome::Kind::timeout: return "timeout";
    case SolverOutcome::Kind::resource_error: return "resource-error";
  }
  return "?";
}

const char* to_string(SolverOutcome::Resource resource) {
  switch (resource) {
    case SolverOutcome::Resource::none: return "none";
    case SolverOutcome::Resource::max_depth: return "max-depth";
    case SolverOutcome::Resource::out_of_memory: return "out-of-memory";
    case SolverOutcome::Resource::other: return "other";
  }
  return "?";
}

std::string describe(const SolverOutcome& o) {
  if (o.kind == SolverOutcome::Kind::resource_error) return std::string("resource-error(") + to_string(o.resource) + ")";
  return to_string(o.kind);
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string first_line(const std::string& s) {
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
  return {};
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string resolve_executable(const std::string& name) {
  if (name.find('/') != std::string::npos) return access(name.c_str(), X_OK) == 0 ? name : std::string();
  const char* path = std::getenv("PATH");
  std::istringstream dirs(path ? path : "/usr/local/bin:/usr/bin:/bin");
  for (std::string dir; std::getline(dirs, dir, ':');) {
    std::string candidate = (dir.empty() ? "." : dir) + "/" + name;
    if (access(candidate.c_str(), X_OK) == 0) return candidate;
  }
  return {};
}

}  // namespace

SolverOutcome parse_solver_output(const std::string& out, const std::string& err, int exit_code) {
  SolverOutcome o;
  o.stderr_digest = fnv1a(err);
  std::istringstream in(out);
  std::string token;
  in >> token;
  if (token == "sat" || token == "unsat" || token == "unknown") {
    o.kind = token == "sat" ? SolverOutcome::Kind::sat
             : token == "unsat" ? SolverOutcome::Kind::unsat
                                : SolverOutcome::Kind::unknown;
    if (o.kind == SolverOutcome::Kind::sat) {
      std::string rest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      auto b = rest.find_first_not_of(" \t\r\n");
      o.model = b == std::string::npos ? std::string() : rest.substr(b);
    }
    return o;
  }
  if (token == "timeout") {
    o.kind = SolverOutcome::Kind::timeout;
    o.detail = "solver reported timeout";
    return o;
  }

  o.kind = SolverOutcome::Kind::resource_error;
  const std::string text = lower(out + "\n" + err);
  if (text.find("memory") != std::string::npos || text.find("bad_alloc") != std::string::npos)
    o.resource = SolverOutcome::Resource::out_of_memory;
  else if (text.find("depth") != std::string::npos || text.find("recursion") != std::string::npos)
    o.resource = SolverOutcome::Resource::max_depth;
  else
    o.resource = SolverOutcome::Resource::other;

  o.detail = first_line(err);
  if (o.detail.empty()) o.detail = first_line(out);
  if (o.detail.empty())
    o.detail = exit_code < 0 ? "terminated by signal " + std::to_string(-exit_code)
                             : "no status in output (exit code " + std::to_string(exit_code) + ")";
  return o;
}

SolverOutcome run_solver(const std::string& script_path, const SolverConfig& config) {
  std::vector<std::string> args = split_words(config.cmd);
  if (args.empty()) throw Error(Stage::solver, "empty solver command");
  const std::string exe = resolve_executable(args.front());
  if (exe.empty()) throw Error(Stage::solver, "solver not found: '" + args.front() + "'");
  if (access(script_path.c_str(), R_OK) != 0) throw Error(Stage::io, "cannot read script '" + script_path + "'");
  args.push_back(script_path);

  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);

  int out_pipe[2], err_pipe[2];
  if (pipe2(out_pipe, O_CLOEXEC) != 0 || pipe2(err_pipe, O_CLOEXEC) != 0)
    throw Error(Stage::solver, "cannot create pipes");

  const auto start = std::chrono::steady_clock::now();
  pid_t pid = fork();
  if (pid < 0) throw Error(Stage::solver, "fork failed");
  if (pid == 0) {
    setpgid(0, 0);
    if (config.mem_mb > 0) {
      rlimit lim{};
      lim.rlim_cur = lim.rlim_max = static_cast<rlim_t>(config.mem_mb) * 1024 * 1024;
      setrlimit(RLIMIT_AS, &lim);
    }
    dup2(out_pipe[1], STDOUT_FILENO);
    dup2(err_pipe[1], STDERR_FILENO);
    execv(exe.c_str(), argv.data());
    _exit(127);
  }
  setpgid(pid, pid);
  close(out_pipe[1]);
  close(err_pipe[1]);

  std::string out, err;
  bool timed_out = false;
  const auto deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                    std::chrono::duration<double>(config.timeout_s));
  pollfd fds[2] = {{out_pipe[0], POLLIN, 0}, {err_pipe[0], POLLIN, 0}};
  int open_fds = 2;
  char buf[65536];
  while (open_fds > 0) {
    auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (remaining.count() <= 0) {
      timed_out = true;
      break;
    }
    int ready = poll(fds, 2, static_cast<int>(std::min<long long>(remaining.count() + 1, 1 << 30)));
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }
    for (int i = 0; i < 2; ++i) {
      if (fds[i].fd < 0 || !(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
      ssize_t n = read(fds[i].fd, buf, sizeof buf);
      if (n > 0) {
        (i == 0 ? out : err).append(buf, static_cast<std::size_t>(n));
      } else if (n == 0 || errno != EINTR) {
        close(fds[i].fd);
        fds[i].fd = -1;
        --open_fds;
      }
    }
  }
  if (timed_out) kill(-pid, SIGKILL);
  for (auto& f : fds)
    if (f.fd >= 0) close(f.fd);

  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  SolverOutcome o;
  if (timed_out) {
    o.kind = SolverOutcome::Kind::timeout;
    o.stderr_digest = fnv1a(err);
    std::ostringstream d;
    d << "no answer within " << config.timeout_s << " s";
    o.detail = d.str();
  } else {
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : WIFSIGNALED(status) ? -WTERMSIG(status) : -1;
    o = parse_solver_output(out, err, code);
  }
  o.wall_s = std::max(0.0, wall);
  return o;
}

Verdict verdict(const SolverOutcome& outcome) {
  switch (outcome.kind) {
    case SolverOutcome::Kind::unsat: return Verdict::satisfied();
    case SolverOutcome::Kind::sat: return Verdict::violated();
    case SolverOutcome::Kind::unknown: return Verdict::unknown();
    case SolverOutcome::Kind::timeout: return Verdict::inconclusive("timeout");
    case SolverOutcome::Kind::resource_error: return Verdict::inconclusive(to_string(outcome.resource));
  }
  return Verdict::inconclusive("unreachable");
}

SolverConfig solver_config_from(const KeyValues& kv, SolverConfig base) {
  for (const auto& [key, value] : kv) {
    try {
      if (key == "solver.cmd") base.cmd = value;
      else if (key == "solver.timeout_s") base.timeout_s = std::stod(value);
      else if (key == "solver.mem_mb") base.mem_mb = std::stoull(value);
    } catch (const std::exception&) {
      throw Error(Stage::solver, "bad value for " + key + ": '" + value + "'");
    }
  }
  return base;
}

}  // namespace hls
