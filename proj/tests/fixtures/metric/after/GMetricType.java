package info.ganglia.gmetric4j.gmetric;

public enum GMetricType {
    STRING,
    INT8,
    UINT8,
    INT16,
    UINT16,
    INT32,
    UINT32,
    FLOAT,
    DOUBLE
}
