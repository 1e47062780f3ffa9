package shop;

public class LineItem {
    private double unitPrice;
    private int quantity;

    public double getUnitPrice() {
        return unitPrice;
    }

    public int getQuantity() {
        return quantity;
    }
}
