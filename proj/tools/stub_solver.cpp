/*
 * SPDX-License-Identifier: MIT
 */

// Stand-in for a CHC solver: checks that the script it is given exists and
// replies with a canned answer.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

int main(int argc, char ** argv) {
    CLI::App app{"Canned-answer CHC solver stub"};
    std::string script;
    std::string answerFile;
    std::string text;
    double sleepSeconds = 0;
    int exitCode = 0;
    app.add_option("script", script, "SMT-LIB script")->required();
    app.add_option("--answer", answerFile, "File whose contents are printed");
    app.add_option("--text", text, "Literal answer (\\n is a newline)");
    app.add_option("--sleep", sleepSeconds, "Seconds to wait before answering");
    app.add_option("--exit", exitCode, "Exit status");
    app.allow_extras();
    CLI11_PARSE(app, argc, argv);

    std::ifstream in(script);
    if (!in) {
        std::cerr << "stub_solver: cannot read " << script << "\n";
        return 1;
    }
    std::stringstream scriptText;
    scriptText << in.rdbuf();
    if (scriptText.str().find("(check-sat)") == std::string::npos) {
        std::cerr << "stub_solver: no (check-sat) in " << script << "\n";
        return 1;
    }

    if (sleepSeconds > 0) std::this_thread::sleep_for(std::chrono::duration<double>(sleepSeconds));

    if (!answerFile.empty()) {
        std::ifstream a(answerFile);
        if (!a) {
            std::cerr << "stub_solver: cannot read " << answerFile << "\n";
            return 1;
        }
        std::cout << a.rdbuf();
    } else if (!text.empty()) {
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] == '\\' && i + 1 < text.size() && text[i + 1] == 'n') {
                std::cout << '\n';
                ++i;
            } else {
                std::cout << text[i];
            }
        }
        std::cout << '\n';
    } else {
        std::cout << "unknown\n";
    }
    return exitCode;
}
