package shop;

public interface Priced {
    double getPrice();
}
