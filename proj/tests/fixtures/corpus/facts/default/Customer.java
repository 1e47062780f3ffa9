package shop;

public class Customer {
    private String customerName;
    private String emailAddress;

    public Customer(String customerName) {
        this.customerName = customerName;
    }

    public String getEmailAddress() {
        return emailAddress;
    }

    public void notifyCustomer(Order order) {
        String address = getEmailAddress();
        send(address, order);
    }

    private void send(String target, Order payload) {
    }
}
