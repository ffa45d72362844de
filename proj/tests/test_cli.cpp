// Copyright 2026 the voippipe authors
// SPDX-License-Identifier: Apache-2.0

// Runs the installed CLI binary as a subprocess. The path comes in through
// the VOIPPIPE_CLI_PATH compile definition so the test works from any
// build directory.

#include <sys/wait.h>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>

#include "doctest.h"
#include "voippipe.h"

namespace {

const std::string kCli = VOIPPIPE_CLI_PATH;

// Exit code of `sh -c cmd`, or -1 if the child did not exit normally.
int run(const std::string& args, const std::string& log = "/dev/null") {
  const std::string cmd = "\"" + kCli + "\" " + args + " > " + log + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

size_t wav_sample_count(const std::string& path) {
  vp_audio* audio = nullptr;
  REQUIRE(vp_audio_read_wav(path.c_str(), &audio) == VP_OK);
  const size_t n = vp_audio_sample_count(audio);
  vp_audio_free(audio);
  return n;
}

}  // namespace

TEST_CASE("tone subcommand writes a readable WAV") {
  CHECK(run("tone cli_tone.wav --freq 1000 --dur 1.0") == 0);
  CHECK(wav_sample_count("cli_tone.wav") == 8000);
  std::filesystem::remove("cli_tone.wav");
}

TEST_CASE("help text advertises the defaults") {
  REQUIRE(run("--help", "cli_help.log") == 0);
  const std::string top = slurp("cli_help.log");
  for (const char* name : {"send", "recv", "loopback", "analyze", "tone"}) {
    CAPTURE(name);
    CHECK(top.find(name) != std::string::npos);
  }

  REQUIRE(run("loopback --help", "cli_help.log") == 0);
  const std::string loop = slurp("cli_help.log");
  CHECK(loop.find("mulaw") != std::string::npos);
  CHECK(loop.find("[20]") != std::string::npos);    // frame-ms
  CHECK(loop.find("[60]") != std::string::npos);    // playout-ms
  CHECK(loop.find("repeat") != std::string::npos);  // concealment
  CHECK(loop.find("[1024]") != std::string::npos);  // n-fft
  CHECK(loop.find("hann") != std::string::npos);

  REQUIRE(run("recv --help", "cli_help.log") == 0);
  const std::string recv = slurp("cli_help.log");
  CHECK(recv.find("[9714]") != std::string::npos);
  std::filesystem::remove("cli_help.log");
}

TEST_CASE("loopback subcommand produces wav, report, and csv set") {
  REQUIRE(run("tone cli_loop_in.wav --dur 2.0") == 0);
  const int code = run(
      "loopback cli_loop_in.wav --loss 0.05 --jitter-ms 10 --seed 4 "
      "--output cli_loop_out.wav --analysis-dir cli_loop_dir",
      "cli_loop.log");
  CAPTURE(slurp("cli_loop.log"));
  REQUIRE(code == 0);

  namespace fs = std::filesystem;
  CHECK(fs::exists("cli_loop_out.wav"));
  size_t csv_count = 0;
  bool has_report = false;
  for (const auto& entry : fs::directory_iterator("cli_loop_dir")) {
    if (entry.path().extension() == ".csv") ++csv_count;
    if (entry.path().filename() == "qos_report.json") has_report = true;
  }
  CHECK(csv_count == 9);
  CHECK(has_report);

  fs::remove("cli_loop_in.wav");
  fs::remove("cli_loop_out.wav");
  fs::remove("cli_loop.log");
  fs::remove_all("cli_loop_dir");
}

TEST_CASE("analyze subcommand writes the csv quartet") {
  REQUIRE(run("tone cli_an_in.wav --dur 1.0") == 0);
  REQUIRE(run("analyze cli_an_in.wav --out-dir cli_an_dir") == 0);
  namespace fs = std::filesystem;
  for (const char* name : {"spectrum.csv", "periodogram.csv",
                           "welch_psd.csv", "spectrogram.csv"}) {
    CAPTURE(name);
    CHECK(fs::exists(fs::path("cli_an_dir") / name));
  }
  fs::remove("cli_an_in.wav");
  fs::remove_all("cli_an_dir");
}

TEST_CASE("send and recv subcommands interoperate over loopback") {
  REQUIRE(run("tone cli_pair_in.wav --dur 1.0") == 0);

  std::thread receiver([] {
    run("recv --port 9731 --idle-timeout-ms 1200 --output cli_pair_out.wav "
        "--report cli_pair_qos.json",
        "cli_pair_recv.log");
  });
  std::this_thread::sleep_for(std::chrono::milliseconds(300));
  const int send_code = run(
      "send cli_pair_in.wav --dest 127.0.0.1:9731 --report cli_pair_send.json",
      "cli_pair_send.log");
  receiver.join();

  CAPTURE(slurp("cli_pair_send.log"));
  CAPTURE(slurp("cli_pair_recv.log"));
  REQUIRE(send_code == 0);
  CHECK(slurp("cli_pair_send.log").find("sent 50 packets") !=
        std::string::npos);

  const std::string report = slurp("cli_pair_send.json");
  CHECK(report.find("\"sent_count\": 50") != std::string::npos);

  // 50 frames of 160 samples survived the local hop
  CHECK(wav_sample_count("cli_pair_out.wav") == 8000);
  const std::string qos = slurp("cli_pair_qos.json");
  CHECK(qos.find("\"received_count\"") != std::string::npos);

  namespace fs = std::filesystem;
  for (const char* name :
       {"cli_pair_in.wav", "cli_pair_out.wav", "cli_pair_qos.json",
        "cli_pair_send.json", "cli_pair_send.log", "cli_pair_recv.log"}) {
    fs::remove(name);
  }
}

TEST_CASE("exit codes distinguish the failure classes") {
  CHECK(run("send cli_missing.wav --dest 127.0.0.1:notaport") == 2);
  CHECK(run("send cli_missing.wav --port 9732") == 3);          // io
  CHECK(run("recv --port 9733 --idle-timeout-ms 300") == 6);    // no traffic
  CHECK(run("loopback") != 0);                                  // usage
  CHECK(run("tone cli_bad.wav --freq 0") == 2);                 // invalid arg
  CHECK(run("--no-such-flag") != 0);
  CHECK(run("loopback x.wav --law gsm") != 0);                  // bad enum
}

TEST_CASE("config file supplies defaults, flags override") {
  {
    std::ofstream cfg("cli_tone.ini");
    cfg << "[tone]\n"
        << "dur=0.5\n"
        << "freq=250\n";
  }
  // --config lives on the top-level app, so it goes before the subcommand
  REQUIRE(run("--config cli_tone.ini tone cli_cfg.wav") == 0);
  CHECK(wav_sample_count("cli_cfg.wav") == 4000);  // dur from config

  REQUIRE(run("--config cli_tone.ini tone cli_cfg.wav --dur 0.25") == 0);
  CHECK(wav_sample_count("cli_cfg.wav") == 2000);  // flag wins

  std::filesystem::remove("cli_tone.ini");
  std::filesystem::remove("cli_cfg.wav");
}
