package com.codahale.metrics;

public enum MetricType {
    COUNT,
    MAX,
    MEAN,
    MIN,
    STDDEV,
    P50,
    P75,
    P95,
    P98,
    P99,
    P999,
    MEAN_RATE,
    M1_RATE,
    M5_RATE,
    M15_RATE
}
