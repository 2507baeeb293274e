#pragma once

#include <chrono>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "thompson/divergence.hpp"

namespace acc {

// Pinned tolerances.
inline constexpr double kEps = 1e-9;
inline constexpr double kGroupLawSeconds = 60;
inline constexpr double kBallSeconds = 300;
inline constexpr double kBallBytes = 4.0 * 1024 * 1024 * 1024;

struct Result {
    bool pass = false;
    std::string summary;
    std::vector<std::string> notes;
};

class Report {
public:
    void set(int id, bool pass, std::string summary, std::vector<std::string> notes = {});
    void note(int id, std::string text);
    const std::map<int, Result>& results() const { return results_; }

private:
    std::map<int, Result> results_;
};

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void progress(const std::string& text);
double peak_rss_bytes();
std::string fmt(double v, int digits = 4);

const thompson::ElementBall& f2_ball9();

void algebra_criteria(Report& r);   // 1-5
void metric_criteria(Report& r);    // 6, 10
void detour_criteria(Report& r);    // 7, 8, 13, 14
void braid_criteria(Report& r);     // 9, 11, 12

}  // namespace acc
