package com.codahale.metrics;

import java.util.Collections;
import java.util.Set;

public abstract class ScheduledReporter {
    private final String name;
    private final Set<MetricType> disabledMetricTypes;

    protected ScheduledReporter(String name, Set<MetricType> disabledMetricTypes) {
        this.name = name;
        this.disabledMetricTypes = disabledMetricTypes != null ? disabledMetricTypes : Collections.emptySet();
    }

    protected Set<MetricType> getDisabledMetricTypes() {
        return disabledMetricTypes;
    }

    protected boolean isEnabled(MetricType metricType) {
        return !disabledMetricTypes.contains(metricType);
    }

    public abstract void report();
}
