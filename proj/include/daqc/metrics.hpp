#pragma once

// Success-probability metrics. A single circuit run succeeds with
// probability P; the number of repetitions needed to reach 99% cumulative
// success is R99 = log(0.01) / log(1 - P), floored at one repetition (a run
// with P > 0.99 still costs one shot), infinite at P = 0. Time-to-solution
// is R99 times the per-run schedule time.

#include <string>
#include <vector>

#include "daqc/schedules.hpp"

namespace daqc {

double r99(double success_p);               // throws unless 0 <= P <= 1
double tts_ns(double success_p, double t_ss_ns);

// Order statistics with infinities sorting last. Median of an even count is
// the mean of the middle pair (infinite if either is); quartiles are Tukey
// hinges, the medians of the lower/upper halves.
struct Aggregate {
    int count = 0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double finite_fraction = 0.0;
};

Aggregate aggregate(std::vector<double> values);  // throws on empty input

// One bench/tune evaluation of one instance. Fixed CSV column order:
// instance,family,n,qubits,cell,capacity,p,T,a,lambda,P,r99,tss_ns,tts_ns,
// skipped,reason.
struct RunMetrics {
    std::string instance_id;
    Family family = Family::LD;
    int n = 0;
    int qubits = 0;
    long long cell = 0;
    long long capacity = 0;
    int p = 0;
    double T = 0.0;
    double a = 0.0;
    std::string lambda_desc;
    double success_p = 0.0;
    double r99 = 0.0;
    double tss_ns = 0.0;
    double tts_ns = 0.0;
    bool skipped = false;
    std::string skip_reason;
};

}  // namespace daqc
